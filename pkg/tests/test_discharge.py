import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dpcrit.discharge import audit_charges, identify_S0, run_discharge
from dpcrit.multigraph import MultiGraph, complete_graph, cycle_graph
from dpcrit.potential import rho, rho_set
from strategies import multigraphs

TWO_TRIANGLES = MultiGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def test_bridgeless_takes_everything():
    st_ = identify_S0(complete_graph(4), (3,) * 4)
    assert st_.s0 == frozenset(range(4)) and st_.whole


def test_two_triangles():
    h = (3,) * 6
    st_ = identify_S0(TWO_TRIANGLES, h)
    assert st_.s0 == frozenset({0, 1, 2}) and (st_.x0, st_.y0) == (2, 3)
    assert rho_set(TWO_TRIANGLES, h, st_.s0) == 9
    audit = audit_charges(TWO_TRIANGLES, h, run_discharge(TWO_TRIANGLES, h))
    assert audit.ok and audit.s0_charge_doubled == 2 * 9 - 5


def test_k4_with_pendant_path():
    g = MultiGraph.from_edges(6, list(complete_graph(4).edges()) + [(3, 4), (4, 5)])
    st_ = identify_S0(g, (3, 3, 3, 3, 2, 1))
    assert st_.s0 == frozenset({5}) and st_.degenerate and (st_.x0, st_.y0) == (5, 4)


def test_k4_charges():
    cs = run_discharge(complete_graph(4), (3,) * 4)
    assert cs.snapshots["R3"][0] == (1, 1, 1, 1)  # 1/2 each, doubled
    assert sum(cs.snapshots["R3"][0]) == 2 * rho(complete_graph(4), (3,) * 4)
    assert all(x == 0 for x in cs.snapshots["R2"][1].values())


def test_degree_three_vertex_with_low_neighbours():
    h = (2, 3, 3, 3)
    cs = run_discharge(complete_graph(4), h)
    assert cs.snapshots["R3"][0][0] == -4  # -2, doubled


def test_cycle():
    g = cycle_graph(5)
    audit = audit_charges(g, (2,) * 5, run_discharge(g, (2,) * 5))
    assert audit.ok and audit.s0_charge_doubled == 2 * rho(g, (2,) * 5)


@settings(max_examples=200, deadline=None)
@given(multigraphs(min_n=1, max_n=7, connected=True), st.data())
def test_audit_identities(g, data):
    h = [data.draw(st.integers(0, 3)) for _ in range(g.n)]
    cs = run_discharge(g, h)
    audit = audit_charges(g, h, cs)
    assert audit.ok, audit


def test_random_simple_graphs_seeded():
    from dpcrit.enumerate import enumerate_graphs
    rng = random.Random(3)
    pool = {n: list(enumerate_graphs(n)) for n in range(1, 7)}
    for _ in range(300):
        n = rng.randint(1, 6)
        g = rng.choice(pool[n])
        h = [rng.randint(1, 3) for _ in range(n)]
        assert audit_charges(g, h, run_discharge(g, h)).ok
