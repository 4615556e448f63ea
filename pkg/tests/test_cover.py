from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcrit.cover import (Cover, CoverError, all_matchings, count_maximal_union_graphs,
                          cover_from_lists, cover_space, decompose, dump_cover, identity_cover,
                          load_cover, maximal_union_graphs, problems, restrict_cover, transpose,
                          validate)
from dpcrit.multigraph import MultiGraph, complete_graph, cycle_graph
from dpcrit.ore import moser_spindle
from strategies import graph_and_demand

EDGE = MultiGraph.from_edges(2, [(0, 1)])


def test_validate_examples():
    k4 = complete_graph(4)
    assert validate(k4, identity_cover(k4, (3,) * 4))
    m = frozenset({(0, 0), (1, 1)})
    double = MultiGraph.from_edges(2, [(0, 1), (0, 1)])
    assert problems(double, Cover((2, 2), {(0, 1): (m, m)}))
    assert problems(EDGE, Cover((2, 2), {(0, 1): (frozenset({(0, 2)}),)}))
    assert problems(EDGE, Cover((2, 2), {}))


def test_cover_from_lists_examples():
    c = cover_from_lists(EDGE, [{1, 2}, {2, 3}])
    assert c.matchings[(0, 1)] == (frozenset({(1, 0)}),)
    c = cover_from_lists(EDGE, [{1, 2, 3}, {1, 2, 3}])
    assert c.matchings[(0, 1)] == (frozenset({(0, 0), (1, 1), (2, 2)}),)
    c = cover_from_lists(EDGE, [{1, 2}, {3, 4}])
    assert c.matchings[(0, 1)] == (frozenset(),)


def test_space_sizes():
    assert cover_space(cycle_graph(3), (2,) * 3).size == 2
    assert cover_space(complete_graph(4), (3,) * 4).size == 216
    assert cover_space(EDGE, (3, 3)).size == 1
    assert cover_space(moser_spindle(), (3,) * 7).size == 6 ** 5
    # without the gauge every edge of C3 has both perfect matchings
    assert cover_space(cycle_graph(3), (2,) * 3, "maximal").size == 8


def test_restrict_examples():
    c = identity_cover(EDGE, (3, 3))
    sub, rc, keep = restrict_cover(EDGE, c, {0: 1}, [1])
    assert rc.list_size == (2,) and keep == [[0, 2]]
    k4 = complete_graph(4)
    c = identity_cover(k4, (3,) * 4)
    sub, rc, _ = restrict_cover(k4, c, {3: 0}, [0, 1, 2])
    assert rc.list_size == (2, 2, 2)
    same, rc, _ = restrict_cover(k4, c, {}, range(4))
    assert rc.matchings == c.matchings
    with pytest.raises(CoverError):
        restrict_cover(k4, c, {2: 0, 3: 0}, [0, 1])


def test_matching_counts():
    assert len(all_matchings(2, 2)) == 7
    assert len(all_matchings(3, 3)) == 34
    assert len(maximal_union_graphs(3, 3, 1)) == 6
    assert len(maximal_union_graphs(2, 3, 1)) == 6
    assert count_maximal_union_graphs(3, 3, 2) == 15


def max_degree_ok(rows, a, b, s):
    return all(bin(r).count("1") <= s for r in rows) and \
        all(bin(c).count("1") <= s for c in transpose(rows, b))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_maximal_union_graphs(a, b, s):
    graphs = maximal_union_graphs(a, b, s)
    assert len(set(graphs)) == len(graphs)
    for rows in graphs:
        assert max_degree_ok(rows, a, b, s)
        # maximal: no missing cell can be added
        for i, j in product(range(a), range(b)):
            if not rows[i] >> j & 1:
                grown = list(rows)
                grown[i] |= 1 << j
                assert not max_degree_ok(grown, a, b, s)
        ms = decompose(rows, a, b, s)
        assert len(ms) == s
        cells = [e for m in ms for e in m]
        assert len(cells) == len(set(cells))
        assert sorted(cells) == sorted((i, j) for i in range(a) for j in range(b)
                                       if rows[i] >> j & 1)
        for m in ms:
            assert len({i for i, _ in m}) == len(m) == len({j for _, j in m})


def test_maximal_graphs_cover_every_bounded_graph():
    # every bipartite graph of max degree <= s lies inside a listed maximal one
    a, b, s = 3, 3, 2
    graphs = maximal_union_graphs(a, b, s)
    for bits in range(1 << (a * b)):
        rows = tuple((bits >> (b * i)) & ((1 << b) - 1) for i in range(a))
        if max_degree_ok(rows, a, b, s):
            assert any(all(r & ~m == 0 for r, m in zip(rows, big)) for big in graphs)


@settings(max_examples=80, deadline=None)
@given(graph_and_demand(min_n=1, max_n=4, max_mult=2, low=1, high=3), st.data())
def test_cover_file_round_trip(gh, data):
    g, h = gh
    space = cover_space(g, h, "maximal")
    choice = [data.draw(st.integers(0, len(o) - 1)) for o in space.options]
    c = space.cover(choice)
    g2, c2 = load_cover(dump_cover(g, c, ["note"]))
    assert g2 == g and c2.list_size == c.list_size
    assert c2.edge_set() == c.edge_set()


def test_cover_file_errors():
    with pytest.raises(CoverError):
        load_cover("nonsense")
    text = dump_cover(EDGE, identity_cover(EDGE, (2, 2)))
    with pytest.raises(CoverError):
        load_cover(text.replace("edge 0 1 01", "edge 0 1 00"))
    with pytest.raises(CoverError):
        load_cover(text.replace("lists 2 2", "lists 2"))
