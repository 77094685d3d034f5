import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincplx.complex_core import KComplex, make_complete_complex
from mincplx.link_graphs import (Graph, common_link_graph, connected_components,
                                 deserialize_graph, induced_subgraph,
                                 largest_component, serialize_graph,
                                 shortest_path)
from mincplx.oracles import brute_common_link


def path_graph(*verts):
    return Graph.from_edges(verts, zip(verts, verts[1:]))


class TestGraph:
    def test_adjacency_sorted(self):
        G = Graph.from_edges([1, 2, 3], [(3, 1), (1, 2)])
        assert G.adjacency()[1] == [2, 3]

    def test_edge_endpoints_must_exist(self):
        with pytest.raises(ValueError):
            Graph.from_edges([1, 2], [(1, 3)])


class TestCommonLink:
    def test_no_edges_when_one_completion_missing(self):
        X = KComplex.from_faces(5, 2, [(1, 2, 3), (1, 4, 5)])
        G = common_link_graph(X, (1, 2))
        # {4,5} would need both {1,4,5} and {2,4,5}
        assert G.edge_count == 0

    def test_k3_needs_all_three_completions(self):
        F = (1, 2, 3)
        needed = [(1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)]
        X = KComplex.from_faces(6, 3, needed)
        assert common_link_graph(X, F).has_edge(4, 5)
        X2 = KComplex.from_faces(6, 3, needed[:2])
        assert not common_link_graph(X2, F).has_edge(4, 5)

    def test_complete_complex(self):
        G = common_link_graph(make_complete_complex(5, 2), (1, 2))
        assert G.vertices == frozenset({3, 4, 5})
        assert G.edge_count == 3

    def test_empty_complex(self):
        X = KComplex.from_faces(6, 2, [])
        assert common_link_graph(X, (1, 2)).edge_count == 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_matches_brute_oracle(self, seed):
        from conftest import random_small_complex
        rng = random.Random(seed)
        X = random_small_complex(rng, n_max=10)
        verts = sorted(range(1, X.n + 1))
        F = tuple(sorted(rng.sample(verts, X.k)))
        assert common_link_graph(X, F) == brute_common_link(X, F)


class TestComponents:
    def test_components(self):
        G = Graph.from_edges([1, 2, 3, 4, 5], [(1, 2), (4, 5)])
        comps = connected_components(G)
        assert sorted(comps) == [[1, 2], [3], [4, 5]]

    def test_largest_component_tie_break(self):
        # two size-2 components: the one with the smaller vertex wins
        G = Graph.from_edges([1, 2, 3, 4], [(3, 4), (1, 2)])
        comp = largest_component(G, G.vertices)
        assert comp.vertices == frozenset({1, 2})
        assert comp.representative == 1

    def test_restriction(self):
        G = path_graph(1, 2, 3, 4)
        comp = largest_component(G, {1, 2, 4})
        assert comp.vertices == frozenset({1, 2})


class TestInducedSubgraph:
    def test_empty_set(self):
        G = path_graph(1, 2, 3)
        H = induced_subgraph(G, set())
        assert H.vertices == frozenset() and H.edge_count == 0

    def test_complete_restriction(self):
        K5 = Graph.from_edges(range(1, 6), combinations(range(1, 6), 2))
        H = induced_subgraph(K5, {1, 2, 3})
        assert H.edge_count == 3

    def test_path_restriction(self):
        G = path_graph(1, 2, 3, 4)
        H = induced_subgraph(G, {1, 3, 4})
        assert H.edges == frozenset({(3, 4)})


class TestShortestPath:
    def test_same_vertex(self):
        G = path_graph(1, 2)
        assert shortest_path(G, 1, 1) == [1]

    def test_path(self):
        G = path_graph(1, 2, 3)
        assert shortest_path(G, 1, 3) == [1, 2, 3]

    def test_disconnected(self):
        G = Graph.from_edges([1, 2], [])
        assert shortest_path(G, 1, 2) is None

    def test_prefers_smaller_neighbors(self):
        # both 1-2-4 and 1-3-4 work; BFS over sorted neighbors picks 2
        G = Graph.from_edges([1, 2, 3, 4], [(1, 2), (1, 3), (2, 4), (3, 4)])
        assert shortest_path(G, 1, 4) == [1, 2, 4]


class TestGraphSerialization:
    def test_round_trip(self):
        G = Graph.from_edges([1, 2, 3, 4], [(1, 4), (2, 3)])
        assert deserialize_graph(serialize_graph(G)) == G
