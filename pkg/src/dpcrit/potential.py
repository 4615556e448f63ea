"""Integer potential of vertices, pairs and vertex sets under a demand ``h``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .multigraph import MultiGraph

# h : V -> {0,1,2,3}; a plain tuple indexed by vertex
HFunction = tuple[int, ...]

VERTEX_POTENTIAL = {3: 8, 2: 4, 1: 1, 0: -1}


def make_h(g: MultiGraph, h: int | Sequence[int] | dict[int, int], *, cap: int | None = 3) -> HFunction:
    """Normalise a constant, sequence or mapping into a per-vertex tuple."""
    if isinstance(h, int):
        values = (h,) * g.n
    elif isinstance(h, dict):
        values = tuple(h[v] for v in range(g.n))
    else:
        values = tuple(int(x) for x in h)
    if len(values) != g.n:
        raise ValueError(f"h has {len(values)} values for {g.n} vertices")
    if any(x < 0 or (cap is not None and x > cap) for x in values):
        raise ValueError(f"h values must lie in 0..{cap}")
    return values


def rho_vertex(h: Sequence[int], v: int) -> int:
    return VERTEX_POTENTIAL[h[v]]


def rho_pair(g: MultiGraph, x: int, y: int) -> int:
    if x == y:
        raise ValueError("pair potential needs two distinct vertices")
    s = g.mult[x][y]
    return 1 - 6 * s if s else 0


def rho_set(g: MultiGraph, h: Sequence[int], a: Iterable[int]) -> int:
    vs = sorted(set(a))
    total = sum(VERTEX_POTENTIAL[h[v]] for v in vs)
    for x, y in combinations(vs, 2):
        s = g.mult[x][y]
        if s:
            total += 1 - 6 * s
    return total


def rho(g: MultiGraph, h: Sequence[int]) -> int:
    return rho_set(g, h, range(g.n))


def rho_edges_between(g: MultiGraph, a: Iterable[int], b: Iterable[int]) -> int:
    """Potential of the pairs joining two disjoint sets."""
    b = list(b)
    total = 0
    for x in a:
        for y in b:
            s = g.mult[x][y]
            if s:
                total += 1 - 6 * s
    return total


def submodularity_residual(g: MultiGraph, h: Sequence[int], u1: Iterable[int], u2: Iterable[int]) -> int:
    """``rho(U1|U2) + rho(U1&U2) - rho(U1) - rho(U2) - rho(E')``; always 0.

    ``E'`` is the set of pairs between ``U1 - U2`` and ``U2 - U1``.
    """
    a, b = set(u1), set(u2)
    return (rho_set(g, h, a | b) + rho_set(g, h, a & b) - rho_set(g, h, a) - rho_set(g, h, b)
            - rho_edges_between(g, a - b, b - a))


def simple_bound_holds(n: int, m: int) -> bool:
    """``|E| >= (8|V| + 1)/5``, i.e. ``rho_3 <= -1`` for simple graphs."""
    return 5 * m >= 8 * n + 1


@dataclass
class SubmodularityReport:
    random_instances: int = 0
    exhaustive_instances: int = 0
    max_abs_residual: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, g: MultiGraph, h: Sequence[int], a, b):
        r = submodularity_residual(g, h, a, b)
        self.max_abs_residual = max(self.max_abs_residual, abs(r))
        if r:
            self.failures.append({"mult": g.mult, "h": tuple(h), "U1": sorted(a),
                                  "U2": sorted(b), "residual": r})


def random_multigraph(rng: random.Random, n: int, max_mult: int = 3, density: float = 0.5
                      ) -> MultiGraph:
    rows = [[0] * n for _ in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < density:
            rows[u][v] = rows[v][u] = rng.randint(1, max_mult)
    return MultiGraph.from_matrix(rows)


def check_submodularity(random_instances: int = 10_000, exhaustive_n: int = 5,
                        max_n: int = 9, seed: int = 0) -> SubmodularityReport:
    """Exact inclusion-exclusion identity of the potential.

    Random part: seeded multigraphs on at most ``max_n`` vertices with random
    demands and random subsets.  Exhaustive part: every simple graph up to
    isomorphism on at most ``exhaustive_n`` vertices, every ordered pair of
    subsets, demands cycling through ``{0..3}``.
    """
    from .enumerate import enumerate_graphs
    rng = random.Random(seed)
    report = SubmodularityReport()
    for _ in range(random_instances):
        n = rng.randint(1, max_n)
        g = random_multigraph(rng, n, density=rng.random())
        h = [rng.randint(0, 3) for _ in range(n)]
        a = {v for v in range(n) if rng.random() < 0.5}
        b = {v for v in range(n) if rng.random() < 0.5}
        report.record(g, h, a, b)
        report.random_instances += 1
    for n in range(1, exhaustive_n + 1):
        subsets = [{v for v in range(n) if bits >> v & 1} for bits in range(1 << n)]
        for k, g in enumerate(enumerate_graphs(n, connected=False)):
            h = [(k + v) % 4 for v in range(n)]
            for a, b in product(subsets, repeat=2):
                report.record(g, h, a, b)
                report.exhaustive_instances += 1
    return report
