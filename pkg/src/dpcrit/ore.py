"""4-Ore graphs: DHGO-composition, generation with certificates, and checks.

A 4-Ore graph is ``K4`` or is built from two smaller ones ``G1``, ``G2`` by
deleting an edge ``xy`` of ``G1``, splitting a vertex ``z`` of ``G2`` into
``z1, z2`` and gluing ``x = z1``, ``y = z2``.  Every generated graph carries an
:class:`OreCertificate`, a composition tree that can be replayed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from .canon import canonical_form, canonical_graph
from .graph_io import decode, encode
from .multigraph import GraphError, MultiGraph, complete_graph, edge_slots
from .potential import rho

MAX_ORE_N = 13


# composition -------------------------------------------------------------------

def dhgo_compose(g1: MultiGraph, xy: tuple[int, int], g2: MultiGraph, z: int,
                 part) -> MultiGraph:
    """Compose ``g1`` and ``g2`` along edge ``xy`` and split vertex ``z``.

    ``part`` lists the indices of ``edge_slots(g2, z)`` that go to ``z1``
    (glued to ``x``); the other slots go to ``z2`` (glued to ``y``).  Vertices
    of ``g1`` keep their indices; the vertices of ``g2`` other than ``z``
    follow in order.
    """
    x, y = xy
    if x == y or not g1.mult[x][y]:
        raise GraphError(f"{xy} is not an edge of the first graph")
    slots = edge_slots(g2, z)
    first = set(part)
    if not first or len(first) == len(slots) or not first <= set(range(len(slots))):
        raise GraphError("degenerate bipartition of the split vertex")
    n1 = g1.n
    index = {}
    for v in range(g2.n):
        if v != z:
            index[v] = n1 + len(index)
    edges = list(g1.remove_edge(x, y).edges())
    for a, b in g2.edges():
        if z not in (a, b):
            edges.append((index[a], index[b]))
    for k, w in enumerate(slots):
        edges.append((x if k in first else y, index[w]))
    return MultiGraph.from_edges(n1 + g2.n - 1, edges)


def k4() -> MultiGraph:
    return canonical_graph(complete_graph(4))


@dataclass(frozen=True)
class OreCertificate:
    """Composition tree; a leaf (``left is None``) stands for ``K4``.

    Indices in ``edge``, ``z`` and ``part`` refer to the canonical labelling of
    the replayed children.
    """
    left: "OreCertificate | None" = None
    edge: tuple[int, int] | None = None
    right: "OreCertificate | None" = None
    z: int | None = None
    part: tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def replay(self) -> MultiGraph:
        """The canonical graph this tree builds."""
        return _replay(self)

    def size(self) -> int:
        return 1 if self.is_leaf else self.left.size() + self.right.size()

    def to_sexpr(self) -> str:
        if self.is_leaf:
            return "K4"
        return "(compose {} ({} {}) {} {} ({}))".format(
            self.left.to_sexpr(), *self.edge, self.right.to_sexpr(), self.z,
            " ".join(map(str, self.part)))


@lru_cache(maxsize=None)
def _replay(cert: OreCertificate) -> MultiGraph:
    if cert.is_leaf:
        return k4()
    g = dhgo_compose(_replay(cert.left), cert.edge, _replay(cert.right), cert.z, cert.part)
    return canonical_graph(g)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_certificate(text: str) -> OreCertificate:
    tokens = _TOKEN.findall(text)
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("truncated certificate")
        tok = tokens[pos]
        pos += 1
        return tok

    def ints_in_parens() -> tuple[int, ...]:
        if take() != "(":
            raise ValueError("expected '('")
        out = []
        while True:
            tok = take()
            if tok == ")":
                return tuple(out)
            out.append(int(tok))

    def node() -> OreCertificate:
        tok = take()
        if tok == "K4":
            return OreCertificate()
        if tok != "(" or take() != "compose":
            raise ValueError(f"unexpected token {tok!r}")
        left = node()
        edge = ints_in_parens()
        right = node()
        z = int(take())
        part = ints_in_parens()
        if take() != ")":
            raise ValueError("expected ')'")
        if len(edge) != 2:
            raise ValueError("edge needs two endpoints")
        return OreCertificate(left, (edge[0], edge[1]), right, z, part)

    cert = node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after certificate")
    return cert


def moser_spindle() -> MultiGraph:
    g = k4()
    return canonical_graph(dhgo_compose(g, (0, 1), g, 0, [0]))


# generation ---------------------------------------------------------------------

@dataclass
class OreAtlas:
    """4-Ore classes by vertex count, each with one certificate."""
    max_n: int
    graphs: dict[bytes, MultiGraph] = field(default_factory=dict)
    certificates: dict[bytes, OreCertificate] = field(default_factory=dict)

    def by_order(self) -> dict[int, list[MultiGraph]]:
        out: dict[int, list[MultiGraph]] = {}
        for key in sorted(self.graphs, key=lambda k: (self.graphs[k].n, k)):
            out.setdefault(self.graphs[key].n, []).append(self.graphs[key])
        return out

    def counts(self) -> dict[int, int]:
        return {n: len(gs) for n, gs in self.by_order().items()}

    def __contains__(self, g: MultiGraph) -> bool:
        return canonical_form(g) in self.graphs

    def __iter__(self):
        for key in sorted(self.graphs, key=lambda k: (self.graphs[k].n, k)):
            yield self.graphs[key], self.certificates[key]

    def __len__(self) -> int:
        return len(self.graphs)


def _compositions(g1: MultiGraph, g2: MultiGraph):
    """Every (edge, z, part) triple; ``part`` ranges over subsets of slots."""
    for x, y, _ in g1.pairs():
        for z in range(g2.n):
            d = len(edge_slots(g2, z))
            for r in range(1, d):
                for part in combinations(range(d), r):
                    yield (x, y), z, part


def generate_4ore(max_n: int) -> OreAtlas:
    """All 4-Ore graphs on at most ``max_n`` vertices up to isomorphism.

    Level ``3s+1`` is built from every pair of smaller levels whose sizes add
    up to ``3s+2``, trying every edge, split vertex and slot bipartition, so
    each level is complete once the smaller ones are.
    """
    if max_n > MAX_ORE_N:
        raise ValueError(f"max_n={max_n} exceeds the ceiling {MAX_ORE_N}")
    atlas = OreAtlas(max_n)
    if max_n < 4:
        return atlas
    base = k4()
    atlas.graphs[canonical_form(base)] = base
    atlas.certificates[canonical_form(base)] = OreCertificate()
    levels: dict[int, list[bytes]] = {4: [canonical_form(base)]}
    for n in range(7, max_n + 1, 3):
        found: dict[bytes, tuple[MultiGraph, OreCertificate]] = {}
        for n1 in range(4, n - 2, 3):
            n2 = n + 1 - n1
            for k1 in levels[n1]:
                for k2 in levels[n2]:
                    g1, g2 = atlas.graphs[k1], atlas.graphs[k2]
                    for xy, z, part in _compositions(g1, g2):
                        g = dhgo_compose(g1, xy, g2, z, part)
                        key = canonical_form(g)
                        if key not in found:
                            cert = OreCertificate(atlas.certificates[k1], xy,
                                                  atlas.certificates[k2], z, part)
                            found[key] = (canonical_graph(g), cert)
        levels[n] = sorted(found)
        for key in levels[n]:
            atlas.graphs[key], atlas.certificates[key] = found[key]
    return atlas


@lru_cache(maxsize=None)
def _cached_atlas(max_n: int) -> OreAtlas:
    return generate_4ore(max_n)


def is_4ore(g: MultiGraph, max_n: int = MAX_ORE_N) -> bool:
    if max_n > MAX_ORE_N:
        raise ValueError(f"max_n={max_n} exceeds the ceiling {MAX_ORE_N}")
    if g.n > max_n:
        raise ValueError(f"graph has {g.n} vertices, above max_n={max_n}")
    if g.n % 3 != 1 or 3 * g.num_edges != 5 * g.n - 2 or not g.is_simple:
        return False
    return g in _cached_atlas(max_n)


def write_atlas(atlas: OreAtlas, path: str | Path):
    """graph6 lines at ``path`` and certificates at ``path`` + ``.cert``."""
    path = Path(path)
    lines, certs = [], []
    for g, cert in atlas:
        lines.append(encode(g).decode())
        certs.append(cert.to_sexpr())
    path.write_text("\n".join(lines) + "\n")
    Path(str(path) + ".cert").write_text("\n".join(certs) + "\n")


def read_atlas(path: str | Path) -> list[tuple[MultiGraph, OreCertificate]]:
    path = Path(path)
    graphs = [decode(line) for line in path.read_text().split("\n") if line.strip()]
    certs = [parse_certificate(line) for line in
             Path(str(path) + ".cert").read_text().split("\n") if line.strip()]
    if len(graphs) != len(certs):
        raise ValueError("atlas and certificate file differ in length")
    return list(zip(graphs, certs))


# subset inequalities -------------------------------------------------------------

@dataclass
class SubsetReport:
    n: int
    s: int
    edges: int
    rho_full: int
    subsets_checked: int
    count_violations: list[int]      # masks A with 5|A| - 3||A|| < 5
    potential_violations: list[int]  # masks A with rho(A) < rho(F) + 6
    identity_ok: bool                # rho(F) == 3 - s and |E| == 5s + 1
    tight_count: int                 # subsets with 5|A| - 3||A|| == 5
    min_potential_gap: int           # min over A of rho(A) - rho(F)

    @property
    def ok(self) -> bool:
        return self.identity_ok and not self.count_violations and not self.potential_violations


def subset_tables(g: MultiGraph) -> tuple[np.ndarray, np.ndarray]:
    """``|A|`` and ``||A||`` for every bitmask ``A`` of ``V(g)``."""
    masks = np.arange(1 << g.n, dtype=np.int64)
    size = np.zeros(1 << g.n, dtype=np.int64)
    for v in range(g.n):
        size += (masks >> v) & 1
    inside = np.zeros(1 << g.n, dtype=np.int64)
    for u, v, s in g.pairs():
        inside += s * (((masks >> u) & 1) & ((masks >> v) & 1))
    return size, inside


def check_subset_inequalities(f: MultiGraph) -> SubsetReport:
    """Sweep every nonempty proper subset of a 4-Ore graph (all demands 3)."""
    if (f.n - 1) % 3:
        raise ValueError("a 4-Ore graph has 3s+1 vertices")
    s = (f.n - 1) // 3
    size, inside = subset_tables(f)
    full = (1 << f.n) - 1
    proper = slice(1, full)
    count = 5 * size - 3 * inside
    pot = 8 * size - 5 * inside
    rho_f = rho(f, (3,) * f.n)
    count_bad = (np.nonzero(count[proper] < 5)[0] + 1).tolist()
    pot_bad = (np.nonzero(pot[proper] < rho_f + 6)[0] + 1).tolist()
    return SubsetReport(
        n=f.n, s=s, edges=f.num_edges, rho_full=rho_f, subsets_checked=full - 1,
        count_violations=count_bad, potential_violations=pot_bad,
        identity_ok=(rho_f == 3 - s and f.num_edges == 5 * s + 1),
        tight_count=int(np.count_nonzero(count[proper] == 5)),
        min_potential_gap=int(pot[proper].min() - rho_f))


# the Moser-spindle extension ------------------------------------------------------

def moser_extension(f: MultiGraph, xy: tuple[int, int], z: int) -> MultiGraph:
    """``F - xy`` plus a triangle ``x'y'z'`` and the matching ``xx', yy', zz'``."""
    x, y = xy
    n = f.n
    edges = list(f.remove_edge(x, y).edges())
    edges += [(n, n + 1), (n + 1, n + 2), (n, n + 2), (x, n), (y, n + 1), (z, n + 2)]
    return MultiGraph.from_edges(n + 3, edges)


def _triangles_through(f: MultiGraph, x: int, y: int) -> list[int]:
    return [w for w in range(f.n) if f.mult[x][w] and f.mult[y][w]]


def classify_moser_case(f: MultiGraph, xy: tuple[int, int]) -> str | None:
    """Which of the three structural cases the edge falls in.

    ``"triangle"``: ``xy`` lies in a triangle of degree-3 vertices;
    ``"apex"``: an endpoint is the unique degree-4 vertex;
    ``"bridge-edge"``: ``xy`` lies in no triangle.
    """
    x, y = xy
    d = f.degrees
    if any(d[x] == d[y] == d[w] == 3 for w in _triangles_through(f, x, y)):
        return "triangle"
    if 4 in (d[x], d[y]) and d.count(4) == 1:
        return "apex"
    if not _triangles_through(f, x, y):
        return "bridge-edge"
    return None


@dataclass
class MoserCase:
    edge: tuple[int, int]
    z: int
    case: str | None
    is_4ore: bool
    dp3_colorable: bool | None

    @property
    def ok(self) -> bool:
        return self.is_4ore or bool(self.dp3_colorable)


@dataclass
class MoserReport:
    cases: list[MoserCase]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def branch_hits(self) -> dict[str, int]:
        out = {"triangle": 0, "apex": 0, "bridge-edge": 0}
        for c in self.cases:
            if c.case is not None:
                out[c.case] += 1
        return out

    @property
    def consistent(self) -> bool:
        """Case ``triangle`` ends DP 3-colourable, the other two end 4-Ore."""
        for c in self.cases:
            if c.case == "triangle" and not c.dp3_colorable:
                return False
            if c.case in ("apex", "bridge-edge") and not c.is_4ore:
                return False
        return True


def check_moser_extension(f: MultiGraph | None = None) -> MoserReport:
    """Every admissible ``(xy, z)`` extension is 4-Ore or DP 3-colourable."""
    from .solver import is_dp_colorable
    f = moser_spindle() if f is None else f
    cases = []
    for x, y, _ in f.pairs():
        for z in range(f.n):
            if z in (x, y) or f.mult[x][z] or f.mult[y][z]:
                continue
            g = moser_extension(f, (x, y), z)
            ore = is_4ore(g, 10)
            colourable = is_dp_colorable(g, 3).colorable
            cases.append(MoserCase((x, y), z, classify_moser_case(f, (x, y)), ore, colourable))
    return MoserReport(cases)
