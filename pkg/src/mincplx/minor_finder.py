"""Constructive search for a complete k-complex as a topological minor.

The pipeline: split [n] into a branch-vertex pool U and one internal block
W_sigma per k-face sigma of the target complex; look for an injective tuple
of t branch vertices such that every sphere spanned by k+1 of them can be
capped (some v in the block's largest link-graph component extends the base
(k-1)-face to a k-face) and attached (the remaining branch vertex has a
link-graph neighbor in that component); then join cap and attachment by a
shortest path and emit one disk filling per sphere.  Returned witnesses are
re-verified before they leave, so a non-None result is always sound; None
only means the tuple budget ran out.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from itertools import combinations, islice, permutations
from typing import Optional

import numpy as np

from .complex_core import (CheckResult, DiskFilling, KComplex, MinorWitness,
                           ParseError, as_face, verify_minor_witness)
from .link_graphs import (Component, Graph, edges_of_common_link, largest_component,
                          pair_mask_of_common_link, shortest_path)


@dataclass(frozen=True)
class VertexPartition:
    """U plus one block W_sigma per (k+1)-subset sigma of [t]."""

    n: int
    t: int
    k: int
    U: frozenset
    blocks: dict  # sigma tuple -> frozenset

    def sigma_order(self):
        return sorted(self.blocks)


@dataclass(frozen=True)
class EventReport:
    """Per-(F, sigma) diagnostic mirroring the two events the existence
    argument needs: a cap vertex inside the component (event A) and almost
    all of U attachable to it (event B at slack delta)."""

    F: tuple
    sigma: tuple
    event_a: bool
    event_b: bool
    component_size: int
    n_connected: int
    cap_count: int
    delta_used: float


@dataclass(frozen=True)
class FinderConfig:
    t: int
    delta: Optional[float] = None
    eps: float = 1.0 / 3.0
    max_random_tuples: int = 200
    deterministic_scan_budget: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if self.max_random_tuples < 0 or self.deterministic_scan_budget < 0:
            raise ValueError("budgets must be >= 0")


def preset_c(t: int, k: int, eps: float = 1.0 / 3.0) -> float:
    """Smallest one-decimal value strictly above 2T (ln T + ln(k+1)) / (1-eps),
    the constant for which the existence argument goes through."""
    T = math.comb(t, k + 1)
    bound = 2.0 * T * (math.log(T) + math.log(k + 1)) / (1.0 - eps)
    c = math.ceil(bound * 10.0) / 10.0
    if c <= bound:
        c += 0.1
    return round(c, 1)


def default_delta(t: int, k: int, c: Optional[float] = None,
                  eps: float = 1.0 / 3.0) -> float:
    """Midpoint of the admissible interval (e^{-c(1-eps)/(2T)}, 1/(T(k+1)));
    without a c the lower endpoint is taken as 0."""
    T = math.comb(t, k + 1)
    upper = 1.0 / (T * (k + 1))
    lower = 0.0 if c is None else math.exp(-c * (1.0 - eps) / (2.0 * T))
    if lower >= upper:
        raise ValueError(f"no admissible delta for c={c}: {lower} >= {upper}")
    return (lower + upper) / 2.0


def partition_vertices(n: int, t: int, k: int) -> VertexPartition:
    """U = first ceil(n/2) vertices; the rest split into near-equal blocks,
    larger blocks first in lexicographic sigma order."""
    T = math.comb(t, k + 1)
    # every block needs at least k+1 vertices to host a cap and a path
    if n < 2 * T * (k + 1):
        raise ValueError(f"n={n} too small: need n >= {2 * T * (k + 1)} for t={t}, k={k}")
    u_size = (n + 1) // 2
    U = frozenset(range(1, u_size + 1))
    rest = list(range(u_size + 1, n + 1))
    base, rem = divmod(len(rest), T)
    blocks = {}
    pos = 0
    for i, sigma in enumerate(combinations(range(1, t + 1), k + 1)):
        size = base + (1 if i < rem else 0)
        blocks[sigma] = frozenset(rest[pos:pos + size])
        pos += size
    return VertexPartition(n=n, t=t, k=k, U=U, blocks=blocks)


class _LinkCache:
    """Memoized per-(F, sigma) link-graph state shared by one finder run."""

    def __init__(self, X: KComplex, partition: VertexPartition):
        self.X = X
        self.partition = partition
        self._comp = {}   # (F, sigma) -> Component
        self._cap = {}    # (F, sigma) -> sorted cap vertices in the component
        self._conn = {}   # (F, sigma, a) -> bool

    def component(self, F: tuple, sigma: tuple) -> Component:
        key = (F, sigma)
        if key not in self._comp:
            block = self.partition.blocks[sigma]
            edges = edges_of_common_link(self.X, F,
                                         np.fromiter(block, dtype=np.int64))
            G = Graph(frozenset(block),
                      frozenset((int(u), int(v)) for u, v in edges))
            self._comp[key] = largest_component(G, block)
        return self._comp[key]

    def cap_vertices(self, F: tuple, sigma: tuple) -> list:
        key = (F, sigma)
        if key not in self._cap:
            comp = sorted(self.component(F, sigma).vertices)
            rows = np.concatenate(
                [np.asarray(comp, dtype=np.int64)[:, None],
                 np.broadcast_to(np.asarray(F, dtype=np.int64), (len(comp), len(F)))],
                axis=1)
            rows = np.sort(rows, axis=1) - 1
            mask = self.X.contains_ranks(self.X.rank_of_rows(rows))
            self._cap[key] = [v for v, m in zip(comp, mask) if m]
        return self._cap[key]

    def connected(self, F: tuple, sigma: tuple, a: int) -> bool:
        key = (F, sigma, a)
        if key not in self._conn:
            comp = sorted(self.component(F, sigma).vertices)
            pairs = np.sort(np.stack(
                [np.full(len(comp), a, dtype=np.int64),
                 np.asarray(comp, dtype=np.int64)], axis=1), axis=1)
            mask = pair_mask_of_common_link(self.X, F, pairs)
            self._conn[key] = bool(mask.any())
        return self._conn[key]

    def attachment(self, F: tuple, sigma: tuple, a: int) -> Optional[int]:
        """Smallest component vertex adjacent to a in G_F, if any."""
        comp = sorted(self.component(F, sigma).vertices)
        pairs = np.sort(np.stack(
            [np.full(len(comp), a, dtype=np.int64),
             np.asarray(comp, dtype=np.int64)], axis=1), axis=1)
        mask = pair_mask_of_common_link(self.X, F, pairs)
        hits = [v for v, m in zip(comp, mask) if m]
        return hits[0] if hits else None


def check_events(X: KComplex, F, sigma: tuple, partition: VertexPartition,
                 delta: float) -> EventReport:
    """Compute the component C_F^sigma, the cap count and the number of
    U-vertices attachable to the component, and evaluate both events."""
    F = as_face(F)
    if not set(F) <= partition.U:
        raise ValueError(f"F={F} must be contained in U")
    if len(F) != X.k:
        raise ValueError(f"F must have {X.k} vertices")
    cache = _LinkCache(X, partition)
    comp = cache.component(F, sigma)
    caps = cache.cap_vertices(F, sigma)
    candidates = sorted(partition.U - set(F))
    comp_arr = np.asarray(sorted(comp.vertices), dtype=np.int64)
    n_connected = 0
    for u in candidates:
        pairs = np.sort(np.stack(
            [np.full(len(comp_arr), u, dtype=np.int64), comp_arr], axis=1), axis=1)
        if pair_mask_of_common_link(X, F, pairs).any():
            n_connected += 1
    return EventReport(
        F=F, sigma=sigma,
        event_a=len(caps) >= 1,
        event_b=n_connected >= (1.0 - delta) * (len(partition.U) - X.k),
        component_size=len(comp),
        n_connected=n_connected,
        cap_count=len(caps),
        delta_used=delta,
    )


def _candidate_tuples(U: frozenset, t: int, config: FinderConfig):
    """Seeded random injective tuples, then a lexicographic scan."""
    pool = sorted(U)
    rng = random.Random(config.seed)
    for _ in range(config.max_random_tuples):
        yield tuple(rng.sample(pool, t))
    yield from islice(permutations(pool, t), config.deterministic_scan_budget)


def _plan_for_tuple(cache: _LinkCache, branch: tuple, k: int):
    """For each sigma pick the smallest apex that caps and attaches; None if
    some sigma has no workable apex."""
    t = len(branch)
    plan = {}
    for sigma in combinations(range(1, t + 1), k + 1):
        image = sorted(branch[i - 1] for i in sigma)
        chosen = None
        for a in image:
            F = tuple(v for v in image if v != a)
            if not cache.cap_vertices(F, sigma):
                continue
            if cache.connected(F, sigma, a):
                chosen = (a, F)
                break
        if chosen is None:
            return None
        plan[sigma] = chosen
    return plan


def find_branch_tuple(X: KComplex, partition: VertexPartition,
                      config: FinderConfig):
    """First injective tuple (a_1, ..., a_t) for which every sigma has a
    workable apex; None when the budget is exhausted (not a proof of
    absence)."""
    cache = _LinkCache(X, partition)
    for branch in _candidate_tuples(partition.U, partition.t, config):
        if _plan_for_tuple(cache, branch, X.k) is not None:
            return branch
    return None


def build_filling(X: KComplex, sigma: tuple, a: int, F, partition: VertexPartition
                  ) -> Optional[DiskFilling]:
    """Disk filling for one sphere: smallest cap vertex v, smallest
    attachment vertex w, shortest w-v path inside the component."""
    F = as_face(F)
    if a in F or not set(F) <= partition.U or a not in partition.U:
        raise ValueError("apex and base must be disjoint subsets of U")
    cache = _LinkCache(X, partition)
    return _build_filling(cache, sigma, a, F)


def _build_filling(cache: _LinkCache, sigma: tuple, a: int, F: tuple
                   ) -> Optional[DiskFilling]:
    caps = cache.cap_vertices(F, sigma)
    if not caps:
        return None
    w = cache.attachment(F, sigma, a)
    if w is None:
        return None
    v = caps[0]
    comp = cache.component(F, sigma)
    edges = edges_of_common_link(cache.X, F,
                                 np.fromiter(comp.vertices, dtype=np.int64))
    sub = Graph(frozenset(comp.vertices),
                frozenset((int(x), int(y)) for x, y in edges))
    path = shortest_path(sub, w, v)
    if path is None:
        return None
    return DiskFilling(apex=a, base=F, path=tuple(path))


def find_topological_minor(X: KComplex, t: int,
                           config: Optional[FinderConfig] = None
                           ) -> Optional[MinorWitness]:
    """Partition, search for a branch tuple, assemble the fillings, and
    self-check the witness before returning it."""
    if t < X.k + 1:
        raise ValueError(f"need t >= k+1, got t={t}, k={X.k}")
    if config is None:
        config = FinderConfig(t=t)
    if config.t != t:
        config = replace(config, t=t)
    partition = partition_vertices(X.n, t, X.k)
    cache = _LinkCache(X, partition)
    for branch in _candidate_tuples(partition.U, t, config):
        plan = _plan_for_tuple(cache, branch, X.k)
        if plan is None:
            continue
        fillings = {}
        for sigma, (a, F) in plan.items():
            filling = _build_filling(cache, sigma, a, F)
            if filling is None:
                break
            fillings[sigma] = filling
        else:
            witness = MinorWitness(t=t, k=X.k, branch=branch,
                                   fillings=fillings, partition=partition)
            check = verify_minor_witness(X, witness)
            if not check:  # pragma: no cover - construction guarantees this
                raise AssertionError(f"constructed witness failed: {check.reason}")
            return witness
    return None


# -- witness serialization ----------------------------------------------

def serialize_witness(w: MinorWitness, n: int) -> str:
    """Header ``t k n``; branch line; per sigma a sigma/apex/path line
    triple.  Faces are reconstructed from the structure on load."""
    lines = [f"{w.t} {w.k} {n}",
             "branch: " + " ".join(str(a) for a in w.branch)]
    for sigma in sorted(w.fillings):
        f = w.fillings[sigma]
        lines.append("sigma: " + " ".join(str(i) for i in sigma))
        lines.append(f"apex: {f.apex}")
        lines.append("path: " + " ".join(str(v) for v in f.path))
    return "\n".join(lines) + "\n"


def deserialize_witness(text: str) -> MinorWitness:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(1, "empty witness file")
    try:
        t, k, _n = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError(1, f"bad header {lines[0]!r}") from None
    if not lines[1].startswith("branch:"):
        raise ParseError(2, "expected branch line")
    branch = tuple(int(x) for x in lines[1].split(":", 1)[1].split())
    if len(branch) != t:
        raise ParseError(2, f"branch line must list {t} vertices")
    fillings = {}
    i = 2
    while i < len(lines):
        if not lines[i].startswith("sigma:"):
            raise ParseError(i + 1, "expected sigma line")
        sigma = tuple(int(x) for x in lines[i].split(":", 1)[1].split())
        if i + 2 >= len(lines) or not lines[i + 1].startswith("apex:") \
                or not lines[i + 2].startswith("path:"):
            raise ParseError(i + 2, "expected apex and path lines")
        apex = int(lines[i + 1].split(":", 1)[1])
        path = tuple(int(x) for x in lines[i + 2].split(":", 1)[1].split())
        base = tuple(sorted(branch[j - 1] for j in sigma if branch[j - 1] != apex))
        fillings[sigma] = DiskFilling(apex=apex, base=base, path=path)
        i += 3
    return MinorWitness(t=t, k=k, branch=branch, fillings=fillings)


def load_and_verify_witness(text: str, X: KComplex) -> CheckResult:
    return verify_minor_witness(X, deserialize_witness(text))
