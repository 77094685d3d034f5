"""Independent brute-force references for the fast-path algorithms.

Everything here is deliberately naive: triple loops, full subset scans and
exhaustive backtracking, guarded by hard size limits.  Tests compare the
production routines against these, and the CLI exposes them behind
``--oracle`` for auditing.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

from .complex_core import (DiskFilling, KComplex, MinorWitness,
                           verify_minor_witness)
from .link_graphs import Graph
from .surface_census import surface_check


class SizeGuardError(ValueError):
    pass


def brute_common_link(X: KComplex, F) -> Graph:
    """G_F recomputed by looping over candidate edges and all completions."""
    if X.n > 15:
        raise SizeGuardError(f"brute_common_link limited to n <= 15, got n={X.n}")
    F = tuple(sorted(F))
    others = [v for v in range(1, X.n + 1) if v not in F]
    subs = list(combinations(F, X.k - 1))
    edges = set()
    for x, y in combinations(others, 2):
        if all(X.has_top_face(tuple(sorted((x, y) + h))) for h in subs):
            edges.add((x, y))
    return Graph(frozenset(others), frozenset(edges))


def exhaustive_structured_minor_search(X: KComplex, t: int,
                                       max_path_len: int = 2) -> bool:
    """Try every structured witness shape: all injective branch tuples, all
    apex choices and all short internally-disjoint paths.  Ignores the U/W
    partition, so it is strictly more permissive than the finder."""
    if X.n > 14 or t > 4 or X.k != 2:
        raise SizeGuardError("oracle limited to n <= 14, t <= 4, k = 2")
    sigmas = list(combinations(range(1, t + 1), X.k + 1))
    verts = range(1, X.n + 1)
    for branch in permutations(verts, t):
        if _assign_fillings(X, branch, sigmas, 0, set(), {}, max_path_len):
            return True
    return False


def _assign_fillings(X, branch, sigmas, idx, used, fillings, max_path_len):
    if idx == len(sigmas):
        witness = MinorWitness(t=len(branch), k=X.k, branch=branch,
                               fillings=dict(fillings))
        return bool(verify_minor_witness(X, witness))
    sigma = sigmas[idx]
    image = sorted(branch[i - 1] for i in sigma)
    forbidden = set(branch) | used
    pool = [v for v in range(1, X.n + 1) if v not in forbidden]
    for a in image:
        base = tuple(v for v in image if v != a)
        for path in _paths(pool, max_path_len):
            filling = DiskFilling(apex=a, base=base, path=path)
            if not all(X.has_top_face(f) for f in filling.faces()):
                continue
            fillings[sigma] = filling
            if _assign_fillings(X, branch, sigmas, idx + 1,
                                used | set(path), fillings, max_path_len):
                return True
            del fillings[sigma]
    return False


def _paths(pool, max_len):
    for length in range(1, max_len + 2):  # path of m edges has m+1 vertices
        yield from permutations(pool, length)


def brute_enumerate_triangulations(l: int, target_f2: int) -> list:
    """Filter every triangle subset of the target cardinality through
    surface_check; unpruned reference for the sphere enumerator."""
    if l > 6:
        raise SizeGuardError(f"brute enumeration limited to l <= 6, got l={l}")
    all_tris = list(combinations(range(1, l + 1), 3))
    out = []
    for subset in combinations(all_tris, target_f2):
        res = surface_check(subset)
        if res.is_closed_surface and res.orientable and res.genus == 0:
            out.append(subset)
    return sorted(out)
