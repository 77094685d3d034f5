"""Core data types: k-complexes with complete lower skeleton, general
complexes, disk fillings and subdivision witnesses, plus verification and
text serialization.

Vertices are 1-based integers.  Faces are represented as strictly increasing
tuples of vertex ids.  A :class:`KComplex` stores only its top-dimensional
faces; all faces of dimension below k are implicitly present (complete
(k-1)-skeleton).  Top faces are kept in a packed bitset indexed by the colex
rank of the face, which makes membership a constant-time bit test and lets
the samplers and link-graph routines work on whole numpy arrays of faces at
once.

All types are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .rankings import binom_table, rank_rows, rank_subset, unrank_rows

#: Largest packed-bitset size in bits; beyond this a plain set of ranks is used.
BITSET_MAX_BITS = 1 << 31

Face = tuple  # strictly increasing tuple of 1-based vertex ids

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _popcount(bits: np.ndarray) -> int:
    total = 0
    for lo in range(0, len(bits), 1 << 24):
        total += int(_POP8[bits[lo:lo + (1 << 24)]].sum())
    return total


class ParseError(ValueError):
    """Raised on malformed complex/graph/witness text, with a line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def as_face(vertices: Iterable[int]) -> Face:
    """Normalize an iterable of vertex ids into a face tuple, validating it."""
    vs = tuple(sorted(vertices))
    if any(b <= a for a, b in zip(vs, vs[1:])):
        raise ValueError(f"repeated vertex in face {vs}")
    if vs and vs[0] < 1:
        raise ValueError(f"vertex ids must be >= 1, got {vs}")
    return vs


class KComplex:
    """A k-dimensional complex on [n] with complete (k-1)-skeleton.

    Only the set of k-faces is stored, as a bitset over colex ranks (or a
    frozenset of ranks when C(n, k+1) exceeds the bitset cap).
    """

    __slots__ = ("n", "k", "_bits", "_ranks", "_table", "_count")

    def __init__(self, n: int, k: int, *, bits: Optional[np.ndarray] = None,
                 ranks: Optional[frozenset] = None):
        if k < 1:
            raise ValueError(f"dimension k must be >= 1, got {k}")
        if n < k + 1:
            raise ValueError(f"need n >= k+1, got n={n}, k={k}")
        self.n = n
        self.k = k
        self._table = binom_table(n, k + 1)
        self._bits = bits
        self._ranks = ranks
        if bits is None and ranks is None:
            raise ValueError("one of bits/ranks required")
        if bits is not None:
            self._count = _popcount(bits)
        else:
            self._count = len(ranks)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_faces(cls, n: int, k: int, faces: Iterable[Iterable[int]]) -> "KComplex":
        rank_list = []
        for f in faces:
            face = as_face(f)
            if len(face) != k + 1:
                raise ValueError(f"top face {face} does not have {k + 1} vertices")
            if face[-1] > n:
                raise ValueError(f"face {face} has a vertex outside [1, {n}]")
            rank_list.append(rank_subset(tuple(v - 1 for v in face)))
        return cls.from_ranks(n, k, rank_list)

    @classmethod
    def from_ranks(cls, n: int, k: int, ranks) -> "KComplex":
        nfaces = math.comb(n, k + 1)
        if nfaces <= BITSET_MAX_BITS:
            bits = np.zeros((nfaces + 7) // 8, dtype=np.uint8)
            if len(ranks):
                arr = np.asarray(list(ranks), dtype=np.int64)
                np.bitwise_or.at(bits, arr >> 3, np.uint8(1) << (arr & 7).astype(np.uint8))
            return cls(n, k, bits=bits)
        return cls(n, k, ranks=frozenset(int(r) for r in ranks))

    @classmethod
    def from_bits(cls, n: int, k: int, bits: np.ndarray) -> "KComplex":
        expected = (math.comb(n, k + 1) + 7) // 8
        if bits.shape != (expected,):
            raise ValueError("bitset has the wrong length")
        return cls(n, k, bits=bits)

    # -- queries --------------------------------------------------------

    @property
    def face_count(self) -> int:
        """Number of k-faces present."""
        return self._count

    def contains_ranks(self, ranks: np.ndarray) -> np.ndarray:
        """Vectorized membership test for k-faces given by their colex ranks."""
        if self._bits is not None:
            byte = self._bits[ranks >> 3]
            return (byte >> (ranks & 7).astype(np.uint8)) & 1 > 0
        return np.fromiter((int(r) in self._ranks for r in ranks), dtype=bool,
                           count=len(ranks))

    def contains_rank(self, rank: int) -> bool:
        if self._bits is not None:
            return bool((self._bits[rank >> 3] >> (rank & 7)) & 1)
        return rank in self._ranks

    def has_top_face(self, face: Sequence[int]) -> bool:
        face = as_face(face)
        if len(face) != self.k + 1:
            return False
        if face[-1] > self.n:
            raise ValueError(f"vertex {face[-1]} out of range [1, {self.n}]")
        return self.contains_rank(rank_subset(tuple(v - 1 for v in face)))

    def top_face_ranks(self) -> np.ndarray:
        if self._bits is not None:
            flat = np.unpackbits(self._bits, bitorder="little")
            return np.nonzero(flat)[0].astype(np.int64)
        return np.asarray(sorted(self._ranks), dtype=np.int64)

    def top_faces(self) -> Iterator[Face]:
        """Yield top faces as 1-based tuples, in colex-rank order."""
        ranks = self.top_face_ranks()
        if len(ranks) == 0:
            return
        rows = unrank_rows(ranks, self.k + 1, self._table)
        for row in rows:
            yield tuple(int(v) + 1 for v in row)

    def rank_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Colex ranks of (m, k+1) arrays of 0-based sorted vertex rows."""
        return rank_rows(rows, self._table)

    def is_subcomplex_of(self, other: "KComplex") -> bool:
        if (self.n, self.k) != (other.n, other.k):
            return False
        if self._bits is not None and other._bits is not None:
            return not np.any(self._bits & ~other._bits)
        return set(self.top_face_ranks()) <= set(other.top_face_ranks())

    def __eq__(self, other) -> bool:
        if not isinstance(other, KComplex):
            return NotImplemented
        if (self.n, self.k) != (other.n, other.k):
            return False
        if self._bits is not None and other._bits is not None:
            return bool(np.array_equal(self._bits, other._bits))
        return set(map(int, self.top_face_ranks())) == set(map(int, other.top_face_ranks()))

    def __hash__(self):
        return hash((self.n, self.k, self._count))

    def __repr__(self):
        return f"KComplex(n={self.n}, k={self.k}, faces={self._count})"

    def to_general(self) -> "GeneralComplex":
        """Explicit downward-closed face set (small n only)."""
        if math.comb(self.n, self.k + 1) > 1 << 20:
            raise ValueError("to_general is meant for small complexes")
        faces = {()}
        for j in range(1, self.k + 1):
            faces.update(combinations(range(1, self.n + 1), j))
        faces.update(self.top_faces())
        return GeneralComplex(frozenset(faces))


def make_complete_complex(t: int, k: int) -> KComplex:
    """The complete k-complex on [t]: every (k+1)-subset is a top face."""
    if t < k + 1:
        raise ValueError(f"complete complex needs t >= k+1, got t={t}, k={k}")
    nfaces = math.comb(t, k + 1)
    bits = np.zeros((nfaces + 7) // 8, dtype=np.uint8)
    full, rem = divmod(nfaces, 8)
    bits[:full] = 0xFF
    if rem:
        bits[full] = (1 << rem) - 1
    return KComplex(t, k, bits=bits)


def contains_face(X: KComplex, face: Sequence[int]) -> bool:
    """Membership in a KComplex: faces below dimension k are always present."""
    face = as_face(face)
    if face and face[-1] > X.n:
        raise ValueError(f"vertex {face[-1]} out of range [1, {X.n}]")
    if len(face) - 1 < X.k:
        return True
    if len(face) - 1 > X.k:
        return False
    return X.has_top_face(face)


@dataclass(frozen=True)
class GeneralComplex:
    """A finite set of faces; downward closure is an invariant, not enforced."""

    faces: frozenset

    @classmethod
    def closure(cls, faces: Iterable[Iterable[int]]) -> "GeneralComplex":
        out = set()
        for f in faces:
            face = as_face(f)
            for j in range(len(face) + 1):
                out.update(combinations(face, j))
        return cls(frozenset(out))

    def is_downward_closed(self) -> bool:
        for f in self.faces:
            for j in range(len(f)):
                if f[:j] + f[j + 1:] not in self.faces:
                    return False
        return True

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for f in self.faces for v in f)

    def __contains__(self, face) -> bool:
        return as_face(face) in self.faces


def link(X: GeneralComplex, face: Sequence[int]) -> GeneralComplex:
    """lk_X(F) = {H in X : H disjoint from F, H u F in X}."""
    face = as_face(face)
    if face not in X.faces:
        raise ValueError(f"face {face} not in complex")
    fs = set(face)
    out = set()
    for h in X.faces:
        if fs.isdisjoint(h) and as_face(fs.union(h)) in X.faces:
            out.add(h)
    return GeneralComplex(frozenset(out))


class CheckResult:
    """Boolean verdict carrying a reason code when false."""

    __slots__ = ("ok", "reason")

    def __init__(self, ok: bool, reason: Optional[str] = None):
        self.ok = ok
        self.reason = reason

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        return f"CheckResult(ok={self.ok}, reason={self.reason!r})"

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.ok == other
        if isinstance(other, CheckResult):
            return (self.ok, self.reason) == (other.ok, other.reason)
        return NotImplemented


@dataclass(frozen=True)
class DiskFilling:
    """A cone-and-prism disk filling the k-sphere on {apex} u base.

    ``path`` is the internal vertex sequence w_0, ..., w_m; the apex attaches
    to w_0 and the cap face is base u {w_m}.  The face list is fully
    determined by (apex, base, path):

        {e u H : e path edge, H in (base choose k-1)}
        u {{apex, w_0} u H : H in (base choose k-1)}
        u {base u {w_m}}

    giving m*k + k + 1 faces in total.
    """

    apex: int
    base: Face
    path: tuple

    @property
    def k(self) -> int:
        return len(self.base)

    @property
    def boundary_vertices(self) -> Face:
        return tuple(sorted((self.apex,) + self.base))

    def structurally_valid(self) -> bool:
        if len(self.path) == 0 or len(set(self.path)) != len(self.path):
            return False
        if self.apex in self.base or tuple(sorted(self.base)) != self.base:
            return False
        body = set(self.base) | {self.apex}
        return body.isdisjoint(self.path)

    def faces(self) -> list:
        k = self.k
        subs = list(combinations(self.base, k - 1))
        out = []
        for u, v in zip(self.path, self.path[1:]):
            for h in subs:
                out.append(as_face(h + (u, v)))
        for h in subs:
            out.append(as_face(h + (self.apex, self.path[0])))
        out.append(as_face(self.base + (self.path[-1],)))
        return out

    def internal_vertices(self) -> frozenset:
        return frozenset(self.path)


def _disk_conditions(triangles: list, boundary_edges: set) -> bool:
    """k = 2 check: chi = 1 and boundary/internal edge degrees 1/2."""
    edge_deg = {}
    verts = set()
    for tri in triangles:
        verts.update(tri)
        for e in combinations(tri, 2):
            edge_deg[e] = edge_deg.get(e, 0) + 1
    for e in boundary_edges:
        edge_deg.setdefault(e, 0)
        verts.update(e)
    chi = len(verts) - len(edge_deg) + len(triangles)
    if chi != 1:
        return False
    for e, d in edge_deg.items():
        want = 1 if e in boundary_edges else 2
        if d != want:
            return False
    return True


def verify_disk_filling(X: KComplex, filling: DiskFilling) -> CheckResult:
    """Check a disk filling against a complex.

    Reasons on failure: ``bad-structure`` (malformed or wrong dimension),
    ``missing-face`` (a listed face is absent from X), ``not-a-disk``
    (k = 2 Euler/edge-degree conditions violated).
    """
    if filling.k != X.k or not filling.structurally_valid():
        return CheckResult(False, "bad-structure")
    faces = filling.faces()
    if len(faces) != len(filling.path[1:]) * X.k + X.k + 1:
        return CheckResult(False, "bad-structure")
    for f in faces:
        if not X.has_top_face(f):
            return CheckResult(False, "missing-face")
    if X.k == 2:
        boundary = set(combinations(filling.boundary_vertices, 2))
        if not _disk_conditions(faces, boundary):
            return CheckResult(False, "not-a-disk")
    return CheckResult(True)


@dataclass(frozen=True)
class MinorWitness:
    """An explicit structured subdivision of the complete k-complex on t vertices.

    ``branch`` lists the branch vertices a_1, ..., a_t (the image of the
    injection from [t]); ``fillings`` maps each (k+1)-subset sigma of [t]
    (as a sorted tuple of indices) to the disk filling of the sphere spanned
    by the corresponding branch vertices.
    """

    t: int
    k: int
    branch: tuple
    fillings: dict
    partition: object = None

    def branch_of(self, sigma: tuple) -> Face:
        return tuple(sorted(self.branch[i - 1] for i in sigma))


def verify_minor_witness(X: KComplex, w: MinorWitness) -> CheckResult:
    """Full witness check: injectivity, per-sphere fillings, disjointness."""
    if len(set(w.branch)) != w.t or w.k != X.k:
        return CheckResult(False, "bad-structure")
    sigmas = list(combinations(range(1, w.t + 1), w.k + 1))
    if set(w.fillings) != set(sigmas):
        return CheckResult(False, "bad-structure")
    seen = set()
    for sigma in sigmas:
        filling = w.fillings[sigma]
        if filling.boundary_vertices != w.branch_of(sigma):
            return CheckResult(False, "bad-structure")
        res = verify_disk_filling(X, filling)
        if not res:
            return res
        internal = filling.internal_vertices()
        if internal & seen:
            return CheckResult(False, "overlapping-fillings")
        if internal & set(w.branch):
            return CheckResult(False, "bad-structure")
        seen |= internal
    return CheckResult(True)


# -- serialization ------------------------------------------------------

def serialize_complex(X: KComplex) -> str:
    """Text format: header ``n k``, then one sorted top face per line,
    lines in lexicographic order."""
    lines = [f"{X.n} {X.k}"]
    for face in sorted(X.top_faces()):
        lines.append(" ".join(str(v) for v in face))
    return "\n".join(lines) + "\n"


def deserialize_complex(text: str) -> KComplex:
    """Parse the complex text format; duplicate faces warn and are dropped."""
    lines = text.splitlines()
    header = None
    faces = []
    seen = set()
    for i, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(i, f"expected header 'n k', got {raw!r}")
            try:
                n, k = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(i, f"bad header {raw!r}") from None
            if k < 1 or n < k + 1:
                raise ParseError(i, f"invalid dimensions n={n}, k={k}")
            header = (n, k)
            continue
        n, k = header
        try:
            vs = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(i, f"non-integer vertex in {raw!r}") from None
        if len(vs) != k + 1:
            raise ParseError(i, f"face {vs} must have {k + 1} vertices")
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ParseError(i, f"face {vs} is not strictly increasing")
        if vs[0] < 1 or vs[-1] > n:
            raise ParseError(i, f"face {vs} outside [1, {n}]")
        if vs in seen:
            warnings.warn(f"duplicate face {vs} on line {i}, ignored")
            continue
        seen.add(vs)
        faces.append(vs)
    if header is None:
        raise ParseError(len(lines) + 1, "missing header")
    return KComplex.from_faces(header[0], header[1], faces)
