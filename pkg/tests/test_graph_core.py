from itertools import combinations

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from anticomplete.generators import gen_complete, gen_cycle, gen_empty, gen_path
from anticomplete.graph import (Graph, are_anticomplete, complement, components, disjoint_union,
                                find_clique, find_induced_biclique, find_stable_set, induced_subgraph,
                                is_clique, is_connected, is_induced_path, is_stable_set, maximum_clique,
                                maximum_stable_set, relabel, to_mask)

from conftest import clique_number, to_nx


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


def test_graph_rejects_loops_and_out_of_range():
    import pytest
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_anticomplete_examples():
    assert not are_anticomplete(gen_complete(2), [0], [1])
    assert are_anticomplete(gen_empty(4), [0, 1], [2, 3])
    assert are_anticomplete(gen_path(4), [0], [3])
    assert not are_anticomplete(gen_path(4), [0], [0])


def test_induced_subgraph_examples():
    H, rel = induced_subgraph(gen_complete(5), [1, 3, 4])
    assert H.n == 3 and H.m == 3 and rel == [1, 3, 4]
    H, _ = induced_subgraph(gen_cycle(4), [0, 1, 2])
    assert H.m == 2 and is_induced_path(H, [0, 1, 2])
    H, _ = induced_subgraph(gen_cycle(4), [])
    assert H.n == 0


def test_components_examples():
    two = disjoint_union(gen_complete(3), gen_complete(3))
    assert sorted(map(sorted, components(two))) == [[0, 1, 2], [3, 4, 5]]
    assert len(components(gen_cycle(5))) == 1
    assert components(gen_empty(4)) == [[0], [1], [2], [3]]


def test_induced_path_examples():
    assert not is_induced_path(gen_cycle(4), [0, 1, 2, 3])
    assert is_induced_path(gen_path(4), [0, 1, 2, 3])
    assert not is_induced_path(gen_path(4), [0, 2, 1, 3])


def test_stable_set_examples():
    assert not is_stable_set(gen_complete(3), [0, 2])
    assert is_stable_set(gen_empty(5), [0, 1, 4])
    assert is_stable_set(gen_cycle(4), [0, 2])


@settings(max_examples=200, deadline=None)
@given(graphs(6), st.data())
def test_anticomplete_matches_pairwise_definition(G, data):
    X = data.draw(st.sets(st.integers(0, G.n - 1)))
    Y = data.draw(st.sets(st.integers(0, G.n - 1)).map(lambda s: s - X))
    expected = not any(G.has_edge(x, y) for x in X for y in Y)
    assert are_anticomplete(G, X, Y) == expected


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_components_partition_and_pairwise_anticomplete(G):
    comps = components(G)
    flat = sorted(v for c in comps for v in c)
    assert flat == list(range(G.n))
    for c in comps:
        assert is_connected(G, c)
    for a, b in combinations(comps, 2):
        assert are_anticomplete(G, a, b)
    assert len(comps) == nx.number_connected_components(to_nx(G))


@settings(max_examples=200, deadline=None)
@given(graphs(), st.data())
def test_induced_path_pairs(G, data):
    order = data.draw(st.permutations(range(G.n)))
    order = order[:data.draw(st.integers(1, G.n))]
    if not is_induced_path(G, order):
        return
    for i in range(len(order) - 1):
        assert not is_stable_set(G, [order[i], order[i + 1]])
    for i, j in combinations(range(len(order)), 2):
        if j - i >= 2:
            assert is_stable_set(G, [order[i], order[j]])


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_clique_and_stable_search_against_networkx(G):
    w = clique_number(G)
    assert len(maximum_clique(G)) == w
    assert is_clique(G, maximum_clique(G))
    alpha = clique_number(complement(G))
    S = maximum_stable_set(G)
    assert len(S) == alpha and is_stable_set(G, S)
    assert find_clique(G, w + 1) is None
    assert find_stable_set(G, alpha + 1) is None


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_relabel_preserves_edges(G, data):
    perm = data.draw(st.permutations(range(G.n)))
    H = relabel(G, perm)
    assert sorted(tuple(sorted((perm[u], perm[v]))) for u, v in G.edges()) == H.edges()


def test_induced_biclique():
    from anticomplete.generators import gen_complete_bipartite
    got = find_induced_biclique(gen_complete_bipartite(3, 3), 3)
    assert got is not None
    X, Y = got
    assert is_stable_set(gen_complete_bipartite(3, 3), X)
    assert find_induced_biclique(gen_complete(5), 2) is None
    assert find_induced_biclique(gen_cycle(4), 2) is not None
    assert to_mask([0, 2]) == 5
