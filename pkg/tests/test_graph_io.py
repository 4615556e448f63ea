import networkx as nx
import pytest
from hypothesis import given, settings

from dpcrit.enumerate import enumerate_graphs
from dpcrit.graph_io import (FormatError, decode, encode, from_graph6, from_sparse6, read_graphs,
                             to_graph6, to_sparse6, write_graphs)
from dpcrit.multigraph import MultiGraph, complete_graph
from strategies import multigraphs, simple_graphs


def test_k4_graph6():
    assert to_graph6(complete_graph(4)) == b"C~"
    assert from_graph6("C~") == complete_graph(4)


def test_double_edge_sparse6_round_trip():
    g = MultiGraph.from_edges(2, [(0, 1), (0, 1)])
    assert from_sparse6(to_sparse6(g)).mult[0][1] == 2


def test_round_trip_all_five_vertex_graphs():
    for g in enumerate_graphs(5, connected=False):
        assert decode(encode(g)) == g


@settings(max_examples=200, deadline=None)
@given(simple_graphs(max_n=12))
def test_graph6_matches_networkx(g):
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from((u, v) for u, v, _ in g.pairs())
    assert to_graph6(g) == nx.to_graph6_bytes(ref, header=False).strip()
    back = nx.from_graph6_bytes(to_graph6(g))
    assert sorted(map(sorted, back.edges())) == sorted(map(sorted, ref.edges()))


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_n=10))
def test_sparse6_round_trip(g):
    assert from_sparse6(to_sparse6(g)) == g


@settings(max_examples=100, deadline=None)
@given(multigraphs(min_n=1, max_n=9, max_mult=1))
def test_sparse6_matches_networkx_reader(g):
    back = nx.from_sparse6_bytes(to_sparse6(g))
    assert back.number_of_nodes() == g.n
    assert sorted(map(sorted, back.edges())) == sorted([u, v] for u, v, _ in g.pairs())


def test_read_write(tmp_path):
    gs = [complete_graph(4), MultiGraph.from_edges(3, [(0, 1), (0, 1), (1, 2)])]
    path = tmp_path / "g.s6"
    write_graphs(path, gs)
    assert list(read_graphs(path)) == gs
    gz = tmp_path / "g.g6.gz"
    write_graphs(gz, gs)
    assert list(read_graphs(gz)) == gs


def test_bad_input():
    with pytest.raises(FormatError):
        decode("C")
    with pytest.raises(FormatError):
        decode("C\x01")
