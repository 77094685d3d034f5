import pytest

from mincplx.complex_core import (KComplex, make_complete_complex,
                                  verify_disk_filling, verify_minor_witness)
from mincplx.minor_finder import (FinderConfig, build_filling, check_events,
                                  default_delta, deserialize_witness,
                                  find_branch_tuple, find_topological_minor,
                                  load_and_verify_witness, partition_vertices,
                                  preset_c, serialize_witness)
from mincplx.oracles import brute_common_link
from mincplx.random_gen import RandomParams, sample_complex


class TestPresets:
    def test_preset_c_t4_k2(self):
        assert preset_c(4, 2) == 29.9

    def test_preset_c_strictly_above_bound(self):
        import math
        for t, k in [(3, 2), (4, 2), (5, 2), (4, 3)]:
            T = math.comb(t, k + 1)
            bound = 2 * T * (math.log(T) + math.log(k + 1)) / (1 - 1 / 3)
            assert preset_c(t, k) > bound
            assert round(preset_c(t, k), 1) == preset_c(t, k)

    def test_default_delta_interval(self):
        import math
        c = preset_c(4, 2)
        T = math.comb(4, 3)
        lo = math.exp(-c * (1 - 1 / 3) / (2 * T))
        hi = 1 / (T * 3)
        assert lo < default_delta(4, 2, c) < hi
        assert 0 < default_delta(4, 2) < hi  # no c: lower endpoint 0


class TestPartition:
    def test_n24_t4(self):
        part = partition_vertices(24, 4, 2)
        assert len(part.U) == 12
        assert sorted(len(b) for b in part.blocks.values()) == [3, 3, 3, 3]

    def test_n25_t4(self):
        part = partition_vertices(25, 4, 2)
        assert len(part.U) == 13
        sizes = sorted(len(b) for b in part.blocks.values())
        assert sizes == [3, 3, 3, 3]
        assert part.U == frozenset(range(1, 14))

    def test_too_small(self):
        with pytest.raises(ValueError):
            partition_vertices(8, 4, 2)

    def test_blocks_partition_complement(self):
        part = partition_vertices(37, 4, 2)
        union = set()
        for b in part.blocks.values():
            assert not (union & b)
            union |= b
        assert union | part.U == set(range(1, 38))
        # larger blocks come first in lexicographic sigma order
        sizes = [len(part.blocks[s]) for s in part.sigma_order()]
        assert sizes == sorted(sizes, reverse=True)


class TestCheckEvents:
    def test_empty_complex(self):
        X = KComplex.from_faces(10, 2, [])
        part = partition_vertices(10, 3, 2)
        rep = check_events(X, (1, 2), (1, 2, 3), part, delta=0.5)
        assert not rep.event_a and not rep.event_b
        assert rep.cap_count == 0 and rep.n_connected == 0

    def test_matches_brute_recomputation(self):
        faces = [(1, 2, 6), (1, 6, 7), (2, 6, 7), (1, 2, 7),
                 (3, 6, 7), (1, 3, 6)]
        X = KComplex.from_faces(10, 2, faces)
        part = partition_vertices(10, 3, 2)
        sigma = (1, 2, 3)
        F = (1, 2)
        rep = check_events(X, F, sigma, part, delta=0.5)

        # independent recomputation through the brute link oracle
        G = brute_common_link(X, F)
        block = part.blocks[sigma]
        comps = []
        seen = set()
        adj = G.adjacency()
        for v in sorted(block):
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(w for w in adj.get(u, []) if w in block)
            seen |= comp
            comps.append(comp)
        comp = max(comps, key=lambda cc: (len(cc), -min(cc)))
        caps = [v for v in comp if X.has_top_face(tuple(sorted(F + (v,))))]
        attach = [u for u in part.U - set(F)
                  if any(G.has_edge(u, v) for v in comp)]
        assert rep.component_size == len(comp)
        assert rep.cap_count == len(caps)
        assert rep.n_connected == len(attach)

    def test_f_outside_u_rejected(self):
        X = KComplex.from_faces(10, 2, [])
        part = partition_vertices(10, 3, 2)
        with pytest.raises(ValueError):
            check_events(X, (6, 7), (1, 2, 3), part, delta=0.5)


class TestBuildFilling:
    def test_forced_path_length_two(self):
        # G_{1,2} on the block {5,...,8} is the path 5-6-7; only 7 caps,
        # only 5 attaches to apex 3: the filling must use path (5, 6, 7)
        faces = [(1, 5, 6), (2, 5, 6), (1, 6, 7), (2, 6, 7),
                 (1, 2, 7), (1, 3, 5), (2, 3, 5)]
        X = KComplex.from_faces(8, 2, faces)
        part = partition_vertices(8, 3, 2)
        filling = build_filling(X, (1, 2, 3), 3, (1, 2), part)
        assert filling is not None
        assert filling.path == (5, 6, 7)
        assert len(filling.faces()) == 7
        assert verify_disk_filling(X, filling)

    def test_no_cap_vertex(self):
        X = KComplex.from_faces(8, 2, [(1, 5, 6), (2, 5, 6)])
        part = partition_vertices(8, 3, 2)
        assert build_filling(X, (1, 2, 3), 3, (1, 2), part) is None


class TestFinder:
    def test_complete_complex(self):
        X = make_complete_complex(32, 2)
        w = find_topological_minor(X, 4)
        assert w is not None
        assert verify_minor_witness(X, w)

    def test_empty_complex(self):
        X = KComplex.from_faces(32, 2, [])
        assert find_branch_tuple(X, partition_vertices(32, 4, 2),
                                 FinderConfig(t=4, max_random_tuples=5,
                                              deterministic_scan_budget=50)) is None
        assert find_topological_minor(
            X, 4, FinderConfig(t=4, max_random_tuples=5,
                               deterministic_scan_budget=50)) is None

    def test_random_complex_at_large_c(self):
        X = sample_complex(RandomParams(n=200, k=2, seed=5, c=preset_c(4, 2)))
        w = find_topological_minor(X, 4)
        assert w is not None
        assert verify_minor_witness(X, w)

    def test_deterministic_given_seed(self):
        X = sample_complex(RandomParams(n=120, k=2, seed=9, c=29.9))
        w1 = find_topological_minor(X, 4, FinderConfig(t=4, seed=3))
        w2 = find_topological_minor(X, 4, FinderConfig(t=4, seed=3))
        assert w1.branch == w2.branch
        assert w1.fillings == w2.fillings

    def test_t_too_small(self):
        with pytest.raises(ValueError):
            find_topological_minor(make_complete_complex(32, 2), 2)


class TestWitnessSerialization:
    def test_round_trip(self):
        X = make_complete_complex(32, 2)
        w = find_topological_minor(X, 4)
        text = serialize_witness(w, X.n)
        back = deserialize_witness(text)
        assert back.branch == w.branch
        assert back.fillings == w.fillings
        assert load_and_verify_witness(text, X)

    def test_tampered_witness_fails(self):
        X = make_complete_complex(32, 2)
        w = find_topological_minor(X, 4)
        text = serialize_witness(w, X.n).replace(
            "branch: ", "branch: ", 1)
        lines = text.splitlines()
        parts = lines[1].split()
        parts[-1] = parts[-2]  # duplicate a branch vertex
        lines[1] = " ".join(parts)
        res = load_and_verify_witness("\n".join(lines) + "\n", X)
        assert not res
