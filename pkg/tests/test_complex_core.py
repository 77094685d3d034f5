import math
import warnings
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincplx.complex_core import (CheckResult, DiskFilling, GeneralComplex,
                                  KComplex, MinorWitness, ParseError,
                                  contains_face, deserialize_complex, link,
                                  make_complete_complex, serialize_complex,
                                  verify_disk_filling, verify_minor_witness)


class TestKComplex:
    def test_complete_triangle(self):
        X = make_complete_complex(3, 2)
        assert X.face_count == 1
        assert list(X.top_faces()) == [(1, 2, 3)]

    def test_complete_counts(self):
        for t, k in [(4, 2), (6, 2), (5, 3)]:
            X = make_complete_complex(t, k)
            assert X.face_count == math.comb(t, k + 1)

    def test_contains_face(self):
        X = KComplex.from_faces(5, 2, [(1, 2, 3)])
        assert contains_face(X, (1, 2, 3))
        assert not contains_face(X, (1, 2, 4))
        # lower-dimensional faces always present (complete skeleton)
        assert contains_face(X, (1, 5))
        assert contains_face(X, (4,))

    def test_from_faces_from_bits_agree(self):
        faces = [(1, 2, 3), (2, 4, 5), (1, 3, 5)]
        X = KComplex.from_faces(5, 2, faces)
        Y = KComplex.from_bits(5, 2, X._bits.copy())
        assert X == Y
        assert sorted(X.top_faces()) == sorted(faces)

    def test_contains_ranks_vectorized(self):
        X = KComplex.from_faces(6, 2, [(1, 2, 3), (4, 5, 6)])
        ranks = np.arange(math.comb(6, 3), dtype=np.int64)
        mask = X.contains_ranks(ranks)
        assert int(mask.sum()) == 2

    def test_subcomplex(self):
        small = KComplex.from_faces(5, 2, [(1, 2, 3)])
        big = KComplex.from_faces(5, 2, [(1, 2, 3), (1, 2, 4)])
        assert small.is_subcomplex_of(big)
        assert not big.is_subcomplex_of(small)

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            KComplex.from_faces(2, 2, [])


class TestGeneralComplexAndLink:
    def test_link_of_vertex_in_tetra_boundary(self, tetra_boundary):
        X = GeneralComplex.closure(tetra_boundary)
        L = link(X, (1,))
        verts = {f for f in L.faces if len(f) == 1}
        edges = {f for f in L.faces if len(f) == 2}
        tris = {f for f in L.faces if len(f) == 3}
        assert verts == {(2,), (3,), (4,)}
        assert edges == {(2, 3), (2, 4), (3, 4)}
        assert tris == set()

    def test_link_of_edge_in_tetra_boundary(self, tetra_boundary):
        X = GeneralComplex.closure(tetra_boundary)
        L = link(X, (1, 2))
        assert {f for f in L.faces if f} == {(3,), (4,)}

    def test_link_of_top_face(self):
        X = GeneralComplex.closure([(1, 2, 3)])
        L = link(X, (1, 2, 3))
        assert L.faces == frozenset({()})

    def test_downward_closed(self):
        assert GeneralComplex.closure([(1, 2, 3)]).is_downward_closed()
        broken = GeneralComplex(frozenset({(1, 2, 3)}))
        assert not broken.is_downward_closed()


class TestDiskFilling:
    def build(self, m: int):
        # base {1,2}, apex 3, path of m+1 internal vertices starting at 4
        path = tuple(range(4, 4 + m + 1))
        return DiskFilling(apex=3, base=(1, 2), path=path)

    def complex_for(self, filling: DiskFilling) -> KComplex:
        n = max(v for f in filling.faces() for v in f)
        return KComplex.from_faces(n, 2, filling.faces())

    @pytest.mark.parametrize("m", [0, 1, 2, 3, 4, 5])
    def test_face_count_and_chi(self, m):
        filling = self.build(m)
        faces = filling.faces()
        assert len(faces) == 2 * m + 3
        # brute incidence count of the euler characteristic
        verts = {v for f in faces for v in f}
        edges = {e for f in faces for e in combinations(f, 2)}
        assert len(verts) - len(edges) + len(faces) == 1
        assert verify_disk_filling(self.complex_for(filling), filling)

    def test_missing_cap_face(self):
        filling = self.build(1)
        faces = filling.faces()
        cap = (1, 2, filling.path[-1])
        X = KComplex.from_faces(6, 2, [f for f in faces if f != cap])
        res = verify_disk_filling(X, filling)
        assert not res
        assert res.reason == "missing-face"

    def test_bad_structure(self):
        filling = DiskFilling(apex=1, base=(1, 2), path=(3,))
        X = make_complete_complex(5, 2)
        res = verify_disk_filling(X, filling)
        assert res == CheckResult(False, "bad-structure")


def _witness_in_complete(n: int, t: int = 4):
    from mincplx.minor_finder import find_topological_minor
    X = make_complete_complex(n, 2)
    w = find_topological_minor(X, t)
    assert w is not None
    return X, w


class TestMinorWitness:
    def test_complete_complex_witness_verifies(self):
        X, w = _witness_in_complete(32)
        assert verify_minor_witness(X, w)

    def test_non_injective_branch(self):
        X, w = _witness_in_complete(32)
        bad = MinorWitness(t=w.t, k=w.k, branch=(w.branch[0],) + w.branch[1:-1]
                           + (w.branch[0],), fillings=w.fillings)
        assert not verify_minor_witness(X, bad)

    def test_overlapping_internal_vertices(self):
        X, w = _witness_in_complete(32)
        sigmas = sorted(w.fillings)
        donor = w.fillings[sigmas[0]]
        clash = w.fillings[sigmas[1]]
        shared = DiskFilling(apex=clash.apex, base=clash.base, path=donor.path)
        fillings = dict(w.fillings)
        fillings[sigmas[1]] = shared
        bad = MinorWitness(t=w.t, k=w.k, branch=w.branch, fillings=fillings)
        res = verify_minor_witness(X, bad)
        assert not res
        assert res.reason in ("overlapping-fillings", "bad-structure", "missing-face")


class TestSerialization:
    def test_round_trip_k4(self, k4):
        assert deserialize_complex(serialize_complex(k4)) == k4

    def test_wrong_cardinality(self):
        with pytest.raises(ParseError) as exc:
            deserialize_complex("5 2\n1 2\n")
        assert exc.value.line == 2

    def test_duplicate_face_warns(self):
        with pytest.warns(UserWarning):
            X = deserialize_complex("5 2\n1 2 3\n1 2 3\n")
        assert X.face_count == 1

    def test_comments_and_blank_lines(self):
        X = deserialize_complex("# a complex\n\n4 2\n1 2 3  # inline\n")
        assert sorted(X.top_faces()) == [(1, 2, 3)]

    def test_missing_header(self):
        with pytest.raises(ParseError):
            deserialize_complex("# nothing here\n")

    def test_out_of_range_vertex(self):
        with pytest.raises(ParseError):
            deserialize_complex("4 2\n1 2 5\n")

    @settings(max_examples=50, deadline=None)
    @given(st.integers(3, 9), st.data())
    def test_round_trip_random(self, n, data):
        all_faces = list(combinations(range(1, n + 1), 3))
        chosen = data.draw(st.lists(st.sampled_from(all_faces), unique=True))
        X = KComplex.from_faces(n, 2, chosen)
        assert deserialize_complex(serialize_complex(X)) == X
