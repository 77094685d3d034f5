"""Recognition of closed-surface triangulations, Euler-formula face counts,
small-scale sphere enumeration, and the geometric-series tail bound used to
rule out minors below the threshold.

Surface recognition is purely combinatorial: every edge in exactly two
triangles, every vertex link a single cycle, connected triangle adjacency,
and orientability by orientation propagation over the dual graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Iterable, List, Optional

from .complex_core import as_face

#: Default base for the triangulation-count bound tau(l) <= K^l.  Any value
#: above 12*sqrt(3) (~20.78), the growth rate of triangular maps, works; the
#: exact constant is not pinned down by theory, so this is exposed as a flag.
DEFAULT_K = 21.0

ENUMERATION_MAX_VERTICES = 7


@dataclass(frozen=True)
class SurfaceCheckResult:
    is_closed_surface: bool
    euler_characteristic: int
    orientable: bool
    genus: Optional[int]
    reason: Optional[str] = None


@dataclass(frozen=True)
class BoundParams:
    n: int
    c: float
    K: float = DEFAULT_K
    genus: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.c < 0 or self.K <= 0:
            raise ValueError("c must be >= 0 and K > 0")


def _normalize_triangles(triangles: Iterable) -> list:
    out = []
    seen = set()
    for t in triangles:
        tri = as_face(t)
        if len(tri) != 3:
            raise ValueError(f"triangle {tri} must have 3 vertices")
        if tri not in seen:
            seen.add(tri)
            out.append(tri)
    return sorted(out)


def surface_check(triangles: Iterable) -> SurfaceCheckResult:
    """Decide whether a triangle list triangulates a closed orientable (or
    non-orientable) surface; reports chi, orientability and genus."""
    tris = _normalize_triangles(triangles)
    if not tris:
        return SurfaceCheckResult(False, 0, False, None, "empty")

    edge_tris = {}
    verts = set()
    for i, tri in enumerate(tris):
        verts.update(tri)
        for e in combinations(tri, 2):
            edge_tris.setdefault(e, []).append(i)

    chi = len(verts) - len(edge_tris) + len(tris)

    for e, owners in edge_tris.items():
        if len(owners) != 2:
            return SurfaceCheckResult(False, chi, False, None, "edge-degree")

    for v in verts:
        if not _link_is_single_cycle(v, tris):
            return SurfaceCheckResult(False, chi, False, None, "vertex-link")

    if not _dual_connected(tris, edge_tris):
        return SurfaceCheckResult(False, chi, False, None, "disconnected")

    orientable = _orientable(tris, edge_tris)
    genus = (2 - chi) // 2 if orientable else None
    return SurfaceCheckResult(True, chi, orientable, genus)


def _link_is_single_cycle(v: int, tris: list) -> bool:
    link_edges = [tuple(u for u in tri if u != v) for tri in tris if v in tri]
    deg = {}
    for a, b in link_edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    if len(link_edges) != len(deg):
        return False
    # connected 2-regular graph with |E| = |V|: one cycle
    adj = {}
    for a, b in link_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


def _dual_adjacency(tris: list, edge_tris: dict) -> dict:
    adj = {i: [] for i in range(len(tris))}
    for owners in edge_tris.values():
        if len(owners) == 2:
            a, b = owners
            adj[a].append(b)
            adj[b].append(a)
    return adj


def _dual_connected(tris: list, edge_tris: dict) -> bool:
    adj = _dual_adjacency(tris, edge_tris)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(tris)


def _orientable(tris: list, edge_tris: dict) -> bool:
    """Propagate orientations over the dual graph, watching for conflicts.

    A triangle's orientation is a cyclic order; neighbors are coherent when
    the shared edge is traversed in opposite directions.
    """
    orient = {0: tris[0]}
    stack = [0]
    adj = _dual_adjacency(tris, edge_tris)
    while stack:
        i = stack.pop()
        oi = orient[i]
        directed_i = {(oi[0], oi[1]), (oi[1], oi[2]), (oi[2], oi[0])}
        for j in adj[i]:
            shared = tuple(sorted(set(tris[i]) & set(tris[j])))
            # the neighbor must traverse the shared edge the opposite way
            if shared in directed_i:
                want = (shared[1], shared[0])
            else:
                want = shared
            oj = _oriented_with_edge(tris[j], want)
            if j in orient:
                if orient[j] not in _rotations(oj):
                    return False
            else:
                orient[j] = oj
                stack.append(j)
    return True


def _oriented_with_edge(tri: tuple, edge: tuple) -> tuple:
    (a, b), (c,) = edge, tuple(v for v in tri if v not in edge)
    return (a, b, c)


def _rotations(t: tuple) -> set:
    return {t, (t[1], t[2], t[0]), (t[2], t[0], t[1])}


def euler_face_count(l: int, g: int) -> int:
    """Triangle count forced by Euler's formula: f2 = 2(l - 2 + 2g)."""
    if l < 3 or g < 0:
        raise ValueError(f"need l >= 3 and g >= 0, got l={l}, g={g}")
    return 2 * (l - 2 + 2 * g)


def enumerate_sphere_triangulations(l: int) -> List[tuple]:
    """All labeled sphere triangulations on vertex set [l], l <= 7, as sorted
    triangle tuples in lexicographic order.

    DFS over lexicographically increasing triangle choices of size 2l - 4,
    pruning whenever an edge would exceed degree 2.
    """
    if not 3 <= l <= ENUMERATION_MAX_VERTICES:
        raise ValueError(f"l must lie in [3, {ENUMERATION_MAX_VERTICES}], got {l}")
    target = euler_face_count(l, 0)
    all_tris = list(combinations(range(1, l + 1), 3))
    results = []
    edge_deg = {}

    def admissible(tri):
        return all(edge_deg.get(e, 0) < 2 for e in combinations(tri, 2))

    def dfs(start: int, chosen: list):
        if len(chosen) == target:
            res = surface_check(chosen)
            if res.is_closed_surface and res.orientable and res.genus == 0:
                results.append(tuple(chosen))
            return
        remaining = target - len(chosen)
        for idx in range(start, len(all_tris) - remaining + 1):
            tri = all_tris[idx]
            if not admissible(tri):
                continue
            for e in combinations(tri, 2):
                edge_deg[e] = edge_deg.get(e, 0) + 1
            chosen.append(tri)
            dfs(idx + 1, chosen)
            chosen.pop()
            for e in combinations(tri, 2):
                edge_deg[e] -= 1

    dfs(0, [])
    return sorted(results)


def union_bound_closed_form(params: BoundParams) -> float:
    """(c/n)^2 * ((1 - (cK)^(n+1)) / (1 - cK) - 1): the geometric-series form
    of the expected number of genus-2 triangulation copies."""
    ck = params.c * params.K
    if ck == 1.0:
        raise ValueError("cK = 1 hits the geometric-series singularity")
    prefactor = (params.c / params.n) ** 2
    if ck == 0.0:
        return 0.0
    try:
        power = ck ** (params.n + 1)
    except OverflowError:
        raise ValueError("cK > 1 overflows; the bound only makes sense for cK < 1")
    return prefactor * ((1.0 - power) / (1.0 - ck) - 1.0)


def union_bound_direct_sum(params: BoundParams) -> float:
    """Term-by-term sum over vertex counts l: K^l n^l p^(2(l+2)) at
    p = sqrt(c/n).  Agrees with the closed form to floating precision."""
    n, c, K = params.n, params.c, params.K
    if c * K == 1.0:
        raise ValueError("cK = 1 hits the geometric-series singularity")
    p = math.sqrt(c / n)
    ratio = K * n * p * p  # consecutive terms differ by K * n * p^2
    term = K * n * p ** 6
    terms = []
    for _ in range(1, n + 1):
        terms.append(term)
        if term != 0.0 and term < 1e-30 * sum(terms):
            break
        term *= ratio
    return math.fsum(terms)


# -- bundled genus-2 fixture --------------------------------------------

def load_genus2_fixture() -> list:
    """Triangle list of the bundled 10-vertex genus-2 triangulation."""
    text = resources.files("mincplx.data").joinpath("genus2_10.tri").read_text()
    tris = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tris.append(tuple(int(x) for x in line.split()))
    return tris
