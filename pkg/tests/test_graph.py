from __future__ import annotations

import random

import networkx as nx
import pytest

from cliquereg.graph import (
    Graph,
    bits,
    complement,
    connected_components,
    closed_neighborhood,
    delete_edges,
    delete_vertex,
    induced_subgraph,
    is_complete,
    m_closure,
    mask_of,
    min_degree_vertex,
    open_neighborhood,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def test_bits_and_mask_roundtrip():
    assert list(bits(0)) == []
    assert list(bits(0b101101)) == [0, 2, 3, 5]
    assert mask_of([0, 2, 3, 5]) == 0b101101


def test_construction_from_count_and_labels():
    g = Graph(3, [(0, 1), (1, 2)])
    assert g.labels == ("0", "1", "2")
    assert g.edges() == [(0, 1), (1, 2)]
    h = Graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert h.edges() == [(0, 1), (1, 2)]
    assert h.index_of("c") == 2
    assert g != h  # labels differ


def test_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(["a", "b"], [("a", "z")])
    with pytest.raises(ValueError):
        Graph(["a", "a"], [])
    with pytest.raises(ValueError):
        Graph(65)
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])


def test_empty_graph_is_legal():
    g = Graph(0)
    assert g.n == 0
    assert g.edges() == []
    assert is_complete(g)
    assert connected_components(g) == []
    assert min_degree_vertex(g) is None


def test_immutability_and_hash():
    g = Graph(2, [(0, 1)])
    with pytest.raises(AttributeError):
        g.n = 3
    assert hash(g) == hash(Graph(2, [(0, 1)]))
    assert g == Graph(2, [(0, 1)])


def test_induced_subgraph_keeps_labels_and_order():
    g = Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    h = induced_subgraph(g, mask_of([0, 2, 3]))
    assert h.labels == ("a", "c", "d")
    assert h.edges() == [(1, 2), (0, 2)] or h.edges() == [(0, 2), (1, 2)]
    assert h.has_edge(0, 2) and h.has_edge(1, 2) and not h.has_edge(0, 1)
    with pytest.raises(ValueError):
        induced_subgraph(g, 1 << 10)


def test_delete_vertex_matches_induced():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    h = delete_vertex(g, 1)
    assert h.labels == ("0", "2", "3")
    assert h.edges() == [(1, 2)]


def test_complement_involution():
    rng = random.Random(11)
    for n in range(7):
        g = random_graph(rng, n)
        assert complement(complement(g)) == g
        # complement swaps edges and non-edges
        for i in range(n):
            for j in range(i + 1, n):
                assert g.has_edge(i, j) != complement(g).has_edge(i, j)


def test_connected_components_against_networkx():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randrange(1, 9), p=0.25)
        ours = [sorted(bits(c)) for c in connected_components(g)]
        theirs = sorted((sorted(c) for c in nx.connected_components(to_nx(g))), key=lambda c: c[0])
        assert ours == theirs
        # ordered by smallest member
        assert [c[0] for c in ours] == sorted(c[0] for c in ours)


def test_is_complete_and_min_degree():
    assert is_complete(Graph(1))
    assert is_complete(Graph(3, [(0, 1), (0, 2), (1, 2)]))
    assert not is_complete(Graph(3, [(0, 1)]))
    g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    assert min_degree_vertex(g) == 3
    # tie broken toward the smallest index
    assert min_degree_vertex(Graph(3, [(0, 1), (1, 2)])) == 0


def test_neighborhood_subgraphs():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    nb = open_neighborhood(g, 2)
    assert nb.labels == ("0", "1", "3")
    assert nb.edges() == [(0, 1)]
    cnb = closed_neighborhood(g, 2)
    assert cnb.labels == ("0", "1", "2", "3")
    assert cnb.edge_count() == 4


def test_delete_edges():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    h = delete_edges(g, [(0, 1)])
    assert h.n == 3 and h.edges() == [(0, 2), (1, 2)]
    with pytest.raises(ValueError):
        delete_edges(g, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        delete_edges(h, [(0, 1)])


def test_m_closure_single_edge_of_square():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    h = m_closure(g, [(0, 1)])
    # no common neighbors in a 4-cycle, closure is just the edge
    assert h.labels == ("0", "1")
    assert h.edges() == [(0, 1)]


def test_m_closure_edge_of_complete_graph():
    g = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    h = m_closure(g, [(0, 1)])
    assert h.n == 4 and is_complete(h)


def test_m_closure_rejects_non_edges():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        m_closure(g, [(0, 2)])
