from dataclasses import asdict

import pytest

from dpcrit.cover import Cover, identity_cover
from dpcrit.multigraph import MultiGraph, complete_graph, cycle_graph
from dpcrit.ore import moser_spindle
from dpcrit.critical import (NotCritical, check_cycle_covers, check_minimal_covers, check_theorem_bound,
                             contains_subgraph, has_exceptional_subgraph, is_dp_k_critical,
                             is_h_minimal, is_HL_minimal, scan_critical)
from dpcrit.solver import find_transversal, is_dp_colorable

TWIST_C4 = Cover((2,) * 4, {
    (0, 1): (frozenset({(0, 0), (1, 1)}),), (1, 2): (frozenset({(0, 0), (1, 1)}),),
    (2, 3): (frozenset({(0, 0), (1, 1)}),), (0, 3): (frozenset({(0, 1), (1, 0)}),)})


def k4_plus_pendant():
    return MultiGraph.from_edges(5, list(complete_graph(4).edges()) + [(3, 4)])


def test_h_minimal_examples():
    assert is_h_minimal(complete_graph(4), 3)
    assert is_h_minimal(cycle_graph(5), 2)
    assert not is_h_minimal(k4_plus_pendant(), 3)


def test_k_critical_examples():
    assert is_dp_k_critical(complete_graph(4), 4)
    assert is_dp_k_critical(moser_spindle(), 4)
    assert is_dp_k_critical(cycle_graph(5), 3)
    assert not is_dp_k_critical(k4_plus_pendant(), 4)
    assert not is_dp_k_critical(complete_graph(5), 4)


def test_hl_minimal_examples():
    k4 = complete_graph(4)
    witness = is_dp_colorable(k4, 3).witness
    assert is_HL_minimal(k4, witness)
    assert is_HL_minimal(cycle_graph(4), TWIST_C4)
    assert not is_HL_minimal(cycle_graph(4), identity_cover(cycle_graph(4), (2,) * 4))


def test_theorem_bound_examples():
    assert check_theorem_bound(complete_graph(4)) == "exceptional"
    assert check_theorem_bound(moser_spindle()) == "exceptional"
    with pytest.raises(NotCritical):
        check_theorem_bound(cycle_graph(5))
    # arithmetic only: n = 11 with 18 edges meets 5m >= 8n + 1
    g = MultiGraph.from_edges(11, [(i, (i + d) % 11) for i in range(11) for d in (1,)]
                              + [(i, i + 5) for i in range(6)] + [(0, 2)])
    assert g.num_edges == 18
    assert check_theorem_bound(g, verified=True) == "bound"


def test_scan_small():
    r = scan_critical(4)
    assert r.critical_hits == ["C~"] and r.min_edges == 6
    assert r.dichotomy_outcomes["exceptional"] == 1


def test_scan_jobs_do_not_change_the_report():
    one = asdict(scan_critical(6, jobs=1))
    two = asdict(scan_critical(6, jobs=2))
    one.pop("runtimes")
    two.pop("runtimes")
    assert one == two


def test_scan_hits_independently_confirmed():
    # exhaustive search only (no prover) for each n = 5, 6 hit and its edge deletions
    for n in (5, 6):
        for g6 in scan_critical(n).critical_hits:
            from dpcrit.graph_io import decode
            g = decode(g6)
            assert not is_dp_colorable(g, 3, method="exhaustive").colorable
            for u, v, _ in g.pairs():
                assert is_dp_colorable(g.remove_edge(u, v), 3, method="exhaustive").colorable
            assert not contains_subgraph(g, complete_graph(4))


def test_cycle_covers():
    for n in range(3, 7):
        assert check_cycle_covers(n).ok


def test_exceptional_subgraph():
    assert has_exceptional_subgraph(complete_graph(4), (3,) * 4)
    assert not has_exceptional_subgraph(complete_graph(4), (3, 3, 3, 2))
    assert has_exceptional_subgraph(complete_graph(5), (3,) * 5)


def test_minimal_covers_small():
    for n in (1, 2, 3):
        r = check_minimal_covers(n, full=True)
        assert r.ok and r.minimal > 0 if n > 1 else r.ok
    r = check_minimal_covers(2, mode="all")
    assert r.ok


def test_minimal_cover_examples_have_low_potential():
    from dpcrit.potential import rho
    assert rho(cycle_graph(4), (2,) * 4) == -4
    assert rho(cycle_graph(5), (2,) * 5) == -5
    assert rho(MultiGraph.from_edges(2, [(0, 1)]), (1, 1)) == -3
    assert find_transversal(cycle_graph(4), TWIST_C4) is None


def exhaustive_critical(g):
    if is_dp_colorable(g, 3, method="exhaustive").colorable:
        return False
    return all(is_dp_colorable(g.remove_edge(u, v), 3, method="exhaustive").colorable
               for u, v, _ in g.pairs())


def test_scan_agrees_with_exhaustive_oracle():
    from dpcrit.enumerate import enumerate_graphs
    from dpcrit.graph_io import encode
    for n, top in ((5, None), (6, None)):
        hits = set(scan_critical(n).critical_hits)
        for g in enumerate_graphs(n, min_degree=3, max_edges=top):
            assert exhaustive_critical(g) == (encode(g).decode() in hits)
