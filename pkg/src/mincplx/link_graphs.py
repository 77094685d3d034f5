"""Common-link graphs G_F, connected components with the smallest-vertex
tie-break, induced subgraphs and deterministic shortest paths.

The graph of a (k-1)-face F has vertex set [n] minus F; a pair {x, y} is an
edge iff every (k-1)-subset H of F completes {x, y} to a k-face of the
complex.  For k = 2 and F = {a, b} this is the intersection of the links of
a and b.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .complex_core import KComplex, ParseError, as_face


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph: vertex set plus edges as sorted pairs."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if u >= v:
                raise ValueError(f"edge ({u}, {v}) not sorted or a loop")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the graph")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable) -> "Graph":
        return cls(frozenset(vertices),
                   frozenset(tuple(sorted(e)) for e in edges))

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Component:
    """A maximal connected vertex set; representative is its smallest vertex."""

    vertices: frozenset

    @property
    def representative(self) -> int:
        return min(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices


class UnionFind:
    """Array-based union-find with path halving and union by size."""

    def __init__(self, items: Iterable[int]):
        self.index = {v: i for i, v in enumerate(items)}
        self.parent = list(range(len(self.index)))
        self.size = [1] * len(self.index)

    def find(self, v: int) -> int:
        i = self.index[v]
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, u: int, v: int):
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]

    def groups(self) -> dict:
        out = {}
        p = self.parent
        for v, i in self.index.items():
            r = i
            while p[r] != r:
                r = p[r]
            out.setdefault(r, []).append(v)
        return out


def common_link_graph(X: KComplex, F) -> Graph:
    """G_F on [n] minus F; {x,y} is an edge iff {x,y} u H is a face for every
    (k-1)-subset H of F."""
    F = as_face(F)
    if len(F) != X.k:
        raise ValueError(f"F must be a (k-1)-face with {X.k} vertices, got {F}")
    if F[-1] > X.n:
        raise ValueError(f"vertex {F[-1]} out of range [1, {X.n}]")
    others = np.array([v for v in range(1, X.n + 1) if v not in F], dtype=np.int64)
    edges = edges_of_common_link(X, F, others)
    return Graph(frozenset(int(v) for v in others),
                 frozenset((int(u), int(v)) for u, v in edges))


def edges_of_common_link(X: KComplex, F, verts: np.ndarray) -> np.ndarray:
    """Edges of G_F with both endpoints in ``verts`` (1-based, F-disjoint),
    as an (m, 2) array of sorted pairs.  Vectorized kernel behind
    :func:`common_link_graph` and the minor finder."""
    verts = np.sort(np.asarray(verts, dtype=np.int64))
    if len(verts) < 2:
        return np.empty((0, 2), dtype=np.int64)
    ii, jj = np.triu_indices(len(verts), k=1)
    pairs = np.stack([verts[ii], verts[jj]], axis=1)
    present = pair_mask_of_common_link(X, F, pairs)
    return pairs[present]


def pair_mask_of_common_link(X: KComplex, F, pairs: np.ndarray) -> np.ndarray:
    """Boolean mask over an (m, 2) array of candidate G_F edges."""
    F = as_face(F)
    present = np.ones(len(pairs), dtype=bool)
    for H in combinations(F, X.k - 1):
        rows = np.concatenate(
            [pairs, np.broadcast_to(np.asarray(H, dtype=np.int64), (len(pairs), X.k - 1))],
            axis=1)
        rows = np.sort(rows, axis=1) - 1
        present &= X.contains_ranks(X.rank_of_rows(rows))
        if not present.any():
            break
    return present


def induced_subgraph(G: Graph, W) -> Graph:
    W = frozenset(W)
    if not W <= G.vertices:
        raise ValueError("W is not a subset of the graph's vertices")
    return Graph(W, frozenset(e for e in G.edges if e[0] in W and e[1] in W))


def connected_components(G: Graph, W=None) -> list:
    """Components of G (restricted to W if given), each a sorted vertex list."""
    W = frozenset(G.vertices if W is None else W)
    uf = UnionFind(sorted(W))
    for u, v in G.edges:
        if u in W and v in W:
            uf.union(u, v)
    return [sorted(g) for g in uf.groups().values()]


def largest_component(G: Graph, W) -> Component:
    """Largest component of G[W]; ties go to the component with the smallest
    vertex, making the choice deterministic."""
    W = frozenset(W)
    if not W:
        raise ValueError("W must be nonempty")
    if not W <= G.vertices:
        raise ValueError("W is not a subset of the graph's vertices")
    comps = connected_components(G, W)
    best = max(comps, key=lambda c: (len(c), -c[0]))
    return Component(frozenset(best))


def shortest_path(G: Graph, u: int, v: int) -> Optional[list]:
    """Minimum-length path from u to v, or None if disconnected.  Ties are
    broken by expanding neighbors in increasing vertex order (BFS)."""
    if u not in G.vertices or v not in G.vertices:
        raise ValueError("endpoints must be vertices of the graph")
    if u == v:
        return [u]
    adj = G.adjacency()
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                if y == v:
                    path = [v]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(y)
    return None


# -- serialization ------------------------------------------------------

def serialize_graph(G: Graph) -> str:
    """Line 1 is n (vertices are [n]); then one ``u v`` line per edge,
    u < v, in lexicographic order."""
    n = max(G.vertices, default=0)
    lines = [str(n)]
    for u, v in sorted(G.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def deserialize_graph(text: str) -> Graph:
    lines = text.splitlines()
    n = None
    edges = []
    for i, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError(i, f"expected vertex count, got {raw!r}")
            n = int(parts[0])
            continue
        if len(parts) != 2:
            raise ParseError(i, f"expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if not 1 <= u < v <= n:
            raise ParseError(i, f"bad edge ({u}, {v})")
        edges.append((u, v))
    if n is None:
        raise ParseError(len(lines) + 1, "missing vertex count")
    return Graph(frozenset(range(1, n + 1)), frozenset(edges))
