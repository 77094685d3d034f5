"""Filling 3-cycles in 2-complexes: good vertex sets per pair, disk fillings
of triangles, and the all-cycles certificate for a trivial fundamental group.

A vertex x is good for a pair {a, b} when some y in x's component of the
common-link graph G_{a,b} spans a face {a, b, y}; the path from x to y plus
that face is a triangulated disk filling the cycle {a, b, x}.  If every
3-cycle admits a filling, the complex is simply connected (the 1-skeleton is
complete, so general cycles reduce to 3-cycles).

``all_three_cycles_fillable`` runs over all pairs with a packed-bit kernel:
good sets are exactly the vertices reachable from face-completing vertices
in G_{a,b}, computed by a multi-source sweep on bitwise-AND'ed link rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complex_core import KComplex, as_face
from .link_graphs import (UnionFind, common_link_graph, shortest_path)
from .rankings import unrank_rows

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

#: Above this many vertices the dense per-vertex link matrix (n^3 bools
#: transiently) becomes unreasonable; the kernel refuses rather than thrash.
DENSE_LINK_LIMIT = 620


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class GoodSetReport:
    pair: tuple
    good: frozenset
    largest_component_size: int

    def __len__(self):
        return len(self.good)


@dataclass(frozen=True)
class CycleFilling:
    """Disk filling of the cycle {a, b, x} through the pair {a, b}.

    The path runs x = u_0, ..., u_m = y inside G_{a,b} with {a, b, y} a face;
    the triangles are {a, u_i, u_i+1} and {b, u_i, u_i+1} along the path plus
    {a, b, y}, 2m + 1 in total.
    """

    pair: tuple
    x: int
    y: int
    path: tuple

    @property
    def cycle(self) -> tuple:
        return tuple(sorted(self.pair + (self.x,)))

    def triangles(self) -> list:
        a, b = self.pair
        out = []
        for u, v in zip(self.path, self.path[1:]):
            out.append(as_face((a, u, v)))
            out.append(as_face((b, u, v)))
        out.append(as_face((a, b, self.y)))
        return out


@dataclass(frozen=True)
class FillabilityReport:
    fillable: bool
    failing_cycle: Optional[tuple]
    min_good_set: int
    n: int


def _require_k2(X: KComplex):
    if X.k != 2:
        raise UnsupportedDimension(f"cycle filling needs k = 2, got k = {X.k}")


def good_set(X: KComplex, a: int, b: int) -> GoodSetReport:
    """Good vertices for {a, b} via the common-link graph and its components."""
    _require_k2(X)
    if a == b:
        raise ValueError("pair vertices must be distinct")
    a, b = min(a, b), max(a, b)
    G = common_link_graph(X, (a, b))
    uf = UnionFind(sorted(G.vertices))
    for u, v in G.edges:
        uf.union(u, v)
    groups = uf.groups().values()
    largest = max((len(g) for g in groups), default=0)
    good = set()
    for g in groups:
        arr = np.asarray(g, dtype=np.int64)
        rows = np.sort(np.column_stack(
            [np.full(len(arr), a), np.full(len(arr), b), arr]), axis=1) - 1
        if X.contains_ranks(X.rank_of_rows(rows)).any():
            good.update(g)
    return GoodSetReport(pair=(a, b), good=frozenset(good),
                         largest_component_size=largest)


def fill_three_cycle(X: KComplex, cycle) -> Optional[list]:
    """Filling of the cycle {a, b, c}: the face itself if present, otherwise
    fillings of {a,b,x}, {a,c,x}, {b,c,x} through the smallest common good
    vertex x.  Returns a list of CycleFillings or None."""
    _require_k2(X)
    a, b, c = sorted(cycle)
    if len({a, b, c}) != 3:
        raise ValueError("cycle vertices must be distinct")
    if X.has_top_face((a, b, c)):
        return [CycleFilling(pair=(a, b), x=c, y=c, path=(c,))]
    common = (good_set(X, a, b).good & good_set(X, a, c).good
              & good_set(X, b, c).good)
    if not common:
        return None
    x = min(common)
    return [_fill_via_pair(X, p, x) for p in ((a, b), (a, c), (b, c))]


def _fill_via_pair(X: KComplex, pair: tuple, x: int) -> CycleFilling:
    """Shortest path in G_{a,b} from x to the nearest face-completing vertex."""
    a, b = pair
    G = common_link_graph(X, pair)
    targets = _face_vertices(X, a, b)
    path = _nearest_target_path(G, x, targets)
    if path is None:  # x good means a target is reachable
        raise AssertionError(f"no face vertex reachable from good vertex {x}")
    return CycleFilling(pair=pair, x=x, y=path[-1], path=tuple(path))


def _face_vertices(X: KComplex, a: int, b: int) -> set:
    ys = np.array([v for v in range(1, X.n + 1) if v not in (a, b)], dtype=np.int64)
    rows = np.sort(np.column_stack(
        [np.full(len(ys), a), np.full(len(ys), b), ys]), axis=1) - 1
    mask = X.contains_ranks(X.rank_of_rows(rows))
    return {int(v) for v in ys[mask]}


def _nearest_target_path(G, x: int, targets: set) -> Optional[list]:
    """BFS from x with sorted neighbor expansion; stops at the first target
    (smallest such vertex at minimum distance)."""
    if x in targets:
        return [x]
    adj = G.adjacency()
    from collections import deque
    parent = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in parent:
                continue
            parent[v] = u
            if v in targets:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(v)
    return None


# -- packed kernel over all pairs ---------------------------------------

def _packed_link_rows(X: KComplex) -> np.ndarray:
    """P[a, x] = packed bits over y of [{a+1, x+1, y+1} in X] (0-based a, x)."""
    n = X.n
    if n > DENSE_LINK_LIMIT:
        raise ValueError(f"all-pairs kernel limited to n <= {DENSE_LINK_LIMIT}")
    dense = np.zeros((n, n, n), dtype=bool)
    ranks = X.top_face_ranks()
    if len(ranks):
        tri = unrank_rows(ranks, 3, X._table)
        a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
        for i, j, l in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            dense[i, j, l] = True
    return np.packbits(dense, axis=2, bitorder="little")


def _good_mask_packed(P: np.ndarray, a: int, b: int, colmask: np.ndarray
                      ) -> np.ndarray:
    """Packed good-set bits for 0-based pair (a, b): multi-source reachability
    from the face-completing vertices in the AND of the two link rows."""
    M = P[a] & P[b]
    M[a] = 0
    M[b] = 0
    M &= colmask
    reach = P[a][b] & colmask
    frontier = np.nonzero(np.unpackbits(reach, bitorder="little"))[0]
    while len(frontier):
        grown = np.bitwise_or.reduce(M[frontier], axis=0) | reach
        new = grown & ~reach
        if not new.any():
            break
        reach = grown
        frontier = np.nonzero(np.unpackbits(new, bitorder="little"))[0]
    return reach


def all_three_cycles_fillable(X: KComplex) -> FillabilityReport:
    """Check that every 3-cycle is fillable; reports the lexicographically
    first failing cycle, if any, and the smallest good-set size over pairs."""
    _require_k2(X)
    n = X.n
    P = _packed_link_rows(X)
    nbytes = P.shape[2]
    ones = np.full(nbytes, 0xFF, dtype=np.uint8)
    if n % 8:
        ones[-1] = (1 << (n % 8)) - 1

    good = np.zeros((n, n, nbytes), dtype=np.uint8)  # [a, b] rows, a < b
    sizes = np.zeros((n, n), dtype=np.int64)
    min_good = None
    for a in range(n - 1):
        for b in range(a + 1, n):
            colmask = ones.copy()
            colmask[a >> 3] &= ~np.uint8(1 << (a & 7))
            colmask[b >> 3] &= ~np.uint8(1 << (b & 7))
            g = _good_mask_packed(P, a, b, colmask)
            good[a, b] = g
            sizes[a, b] = int(_POP8[g].sum())
            if min_good is None or sizes[a, b] < min_good:
                min_good = sizes[a, b]
    min_good = int(min_good if min_good is not None else 0)

    full = n - 2
    deficient = np.argwhere(sizes < full)
    deficient = [(int(a), int(b)) for a, b in deficient if a < b]
    if not deficient and n >= 4:
        return FillabilityReport(True, None, min_good, n)

    candidates = set()
    for a, b in deficient:
        for c in range(n):
            if c != a and c != b:
                candidates.add(tuple(sorted((a, b, c))))
    for a, b, c in sorted(candidates):
        if (P[a][b] >> np.uint8(c & 7))[c >> 3] & 1:
            continue  # the face {a,b,c} itself is present
        inter = good[a, b] & good[a, c] & good[b, c]
        if not inter.any():
            return FillabilityReport(False, (a + 1, b + 1, c + 1), min_good, n)
    # triples whose three pairs are all full always intersect (n >= 4)
    if n < 4:
        for a in range(n - 2):
            for b in range(a + 1, n - 1):
                for c in range(b + 1, n):
                    if not ((P[a][b] >> np.uint8(c & 7))[c >> 3] & 1):
                        return FillabilityReport(False, (a + 1, b + 1, c + 1),
                                                 min_good, n)
    return FillabilityReport(True, None, min_good, n)
