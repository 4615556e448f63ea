import networkx as nx
import pytest
from hypothesis import given, settings

from dpcrit.multigraph import (GraphError, MultiGraph, blocks, bridges, classify_block,
                               complete_graph, cycle_graph, edge_blocks, is_gdp_tree,
                               path_graph, split_vertex, star_graph)
from dpcrit.ore import moser_spindle
from strategies import multigraphs, simple_graphs


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from((u, v) for u, v, _ in g.pairs())
    return out


def test_degrees():
    assert complete_graph(4).degree(0) == 3
    assert cycle_graph(5).degree(2) == 2
    g = MultiGraph.from_edges(3, [(0, 1), (0, 1), (0, 2)])
    assert g.degree(0) == 3
    assert g.num_edges == 3
    assert not g.is_simple


def test_rejects_loops_and_asymmetry():
    with pytest.raises(GraphError):
        MultiGraph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        MultiGraph.from_matrix([[0, 1], [0, 0]])
    with pytest.raises(GraphError):
        MultiGraph.from_edges(2, [(0, 1)] * 4)


def test_edge_blocks_examples():
    two_triangles = MultiGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5),
                                              (3, 5), (2, 3)])
    dec = edge_blocks(two_triangles)
    assert sorted(map(sorted, dec.edge_blocks)) == [[0, 1, 2], [2, 3], [3, 4, 5]]
    assert edge_blocks(complete_graph(4)).edge_blocks == (frozenset(range(4)),)
    assert len(edge_blocks(path_graph(3)).edge_blocks) == 2
    assert len(bridges(path_graph(3))) == 2


def test_blocks_examples():
    dec = blocks(path_graph(3))
    assert len(dec.blocks) == 2 and dec.cut_vertices == {1}
    dec = blocks(complete_graph(4))
    assert len(dec.blocks) == 1 and not dec.cut_vertices
    assert len(blocks(moser_spindle()).blocks) == 1


def test_gdp_tree_examples():
    assert is_gdp_tree(complete_graph(4))
    assert is_gdp_tree(cycle_graph(5))
    assert is_gdp_tree(cycle_graph(6))
    assert not is_gdp_tree(complete_graph(4).remove_edge(0, 1))
    assert classify_block(complete_graph(3, 2), range(3)) == ("K", 2)
    assert classify_block(cycle_graph(5, 3), range(5)) == ("C", 3)


def test_split_vertex_examples():
    star = star_graph(3)
    parts = split_vertex(star, 0, [0])
    assert sorted(len(c) for c in parts.components()) == [2, 3]
    c4 = split_vertex(cycle_graph(4), 0, [0])
    assert c4.is_connected and c4.num_edges == 4 and sorted(c4.degrees) == [1, 1, 2, 2, 2]
    k4 = split_vertex(complete_graph(4), 0, [0])
    assert sorted(k4.degrees) == [1, 2, 3, 3, 3]


@settings(max_examples=150, deadline=None)
@given(simple_graphs(min_n=1, max_n=8, connected=True))
def test_blocks_and_bridges_match_networkx(g):
    ref = {frozenset(b) for b in nx.biconnected_components(to_nx(g))} or {frozenset([0])}
    assert set(blocks(g).blocks) == ref
    assert {tuple(sorted(e)) for e in bridges(g)} == \
        {tuple(sorted(e)) for e in nx.bridges(to_nx(g))}


@settings(max_examples=100, deadline=None)
@given(multigraphs(min_n=2, max_n=6, connected=True))
def test_parallel_edges_are_never_bridges(g):
    for u, v in bridges(g):
        assert g.mult[u][v] == 1


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_n=7))
def test_handshake(g):
    assert sum(g.degrees) == 2 * g.num_edges
    assert sum(1 for _ in g.edges()) == g.num_edges
