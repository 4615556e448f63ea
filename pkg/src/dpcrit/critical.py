"""Minimality and criticality, plus the desk-scale scans built on them."""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .canon import canonical_form
from .cover import Cover, SpaceTooLarge, cover_space, problems
from .enumerate import enumerate_graphs, enumerate_multigraphs
from .graph_io import encode
from .multigraph import MultiGraph, blocks, cycle_graph
from .ore import is_4ore
from .potential import rho
from .solver import _colourable_fast, find_transversal, is_dp_colorable

# reference constants printed next to scan results
REFERENCE_BOUNDS = {
    "ordinary_4_critical": "|E| >= (5n - 2)/3",
    "this_bound": "|E| >= (8n + 1)/5 unless 4-Ore on <= 10 vertices",
}


def _proper_pieces(g: MultiGraph) -> Iterable[tuple[MultiGraph, list[int]]]:
    """Maximal proper subgraphs: ``g - e`` per edge, ``g - v`` per isolated ``v``.

    Every proper subgraph lies inside one of these.  Vertex lists give the
    surviving original vertices.
    """
    for u, v, _ in g.pairs():
        yield g.remove_edge(u, v), list(range(g.n))
    for v in range(g.n):
        if g.degrees[v] == 0:
            keep = [w for w in range(g.n) if w != v]
            yield g.induced(keep), keep


@dataclass
class MinimalityVerdict:
    minimal: bool
    witness: Cover | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.minimal


def is_h_minimal(g: MultiGraph, h) -> MinimalityVerdict:
    """Not DP ``h``-colourable, while every ``g - e`` is."""
    h = (h,) * g.n if isinstance(h, int) else tuple(h)
    top = is_dp_colorable(g, h)
    if top.colorable:
        return MinimalityVerdict(False, reason="colourable")
    for sub, keep in _proper_pieces(g):
        if not is_dp_colorable(sub, tuple(h[v] for v in keep)).colorable:
            return MinimalityVerdict(False, top.witness, "proper subgraph not colourable")
    return MinimalityVerdict(True, top.witness)


def is_dp_k_critical(g: MultiGraph, k: int) -> bool:
    """``chi_DP(g) = k`` and every proper subgraph has ``chi_DP <= k - 1``.

    Checked as: ``g`` is not DP ``(k-1)``-colourable and every ``g - e`` is.
    That already gives ``chi_DP(g) <= k``: colour an endpoint of ``e`` first,
    then ``g - u`` (a subgraph of ``g - e``) still has ``k - 1`` colours left.
    """
    if g.num_edges == 0 or k < 2:
        return False
    if is_dp_colorable(g, k - 1).colorable:
        return False
    return all(is_dp_colorable(sub, k - 1).colorable for sub, _ in _proper_pieces(g))


def is_HL_minimal(g: MultiGraph, c: Cover) -> bool:
    """No ``(H, L)``-colouring, but each edge-deleted cover has one."""
    errs = problems(g, c)
    if errs:
        raise ValueError("; ".join(errs))
    if not g.is_connected or _colourable_fast_or_none(g, c):
        return False
    return _edge_deletions_colourable(g, c)


def _edge_deletions_colourable(g: MultiGraph, c: Cover) -> bool:
    if g.n == 1:
        return True
    for (u, v), ms in c.matchings.items():
        sub = g.remove_edge(u, v)
        for k in range(len(ms)):
            if not _colourable_fast_or_none(sub, c.without_edge(u, v, k)):
                return False
    return True


def _colourable_fast_or_none(g: MultiGraph, c: Cover) -> bool:
    if g.n == 0:
        return True
    return _colourable_fast(g, c)


# the dichotomy ---------------------------------------------------------------------

class NotCritical(ValueError):
    pass


def check_theorem_bound(g: MultiGraph, verified: bool = False) -> str:
    """``"exceptional"`` (4-Ore, at most 10 vertices) or ``"bound"`` (5|E| >= 8n+1).

    Raises :class:`AssertionError` if neither holds.  Unless ``verified`` the
    graph is first checked to be DP 4-critical.
    """
    if not verified and not is_dp_k_critical(g, 4):
        raise NotCritical("input is not DP 4-critical")
    if g.n <= 10 and is_4ore(g, 10):
        return "exceptional"
    if 5 * g.num_edges >= 8 * g.n + 1:
        return "bound"
    raise AssertionError(f"dichotomy fails for {encode(g).decode()}")


# scans ---------------------------------------------------------------------------

def _to_nx(g: MultiGraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from((u, v) for u, v, _ in g.pairs())
    return out


def contains_subgraph(g: MultiGraph, sub: MultiGraph) -> bool:
    """Is ``sub`` (simple) a not necessarily induced subgraph of ``g`` (simple)?"""
    if sub.n > g.n or sub.num_edges > g.num_edges:
        return False
    return GraphMatcher(_to_nx(g), _to_nx(sub)).subgraph_is_monomorphic()


@dataclass
class ScanReport:
    n: int
    k: int
    max_edges: int | None
    candidates: int
    pruned_by_subgraph: int
    critical_hits: list[str]
    min_edges: int | None
    dichotomy_outcomes: dict[str, int]
    hit_details: list[dict]
    runtimes: dict[str, float]
    reference: dict[str, str] = field(default_factory=lambda: dict(REFERENCE_BOUNDS))

    @property
    def ok(self) -> bool:
        return self.dichotomy_outcomes.get("neither", 0) == 0

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), sort_keys=True, **kw)


def _examine(args) -> tuple[bool, float]:
    g, k = args
    t = time.perf_counter()
    hit = is_dp_k_critical(g, k)
    return hit, time.perf_counter() - t


def _known_critical(n: int, k: int) -> list[MultiGraph]:
    """Critical graphs on fewer than ``n`` vertices (smaller scans, cached)."""
    out = []
    for m in range(k, n):
        out.extend(_scan_hits(m, k))
    return out


_HIT_CACHE: dict[tuple[int, int], list[MultiGraph]] = {}


def _scan_hits(n: int, k: int) -> list[MultiGraph]:
    if (n, k) not in _HIT_CACHE:
        scan_critical(n, k=k)
    return _HIT_CACHE[(n, k)]


def scan_critical(n: int, max_edges: int | None = None, jobs: int = 1, k: int = 4,
                  prune: bool = True) -> ScanReport:
    """Every connected simple graph on ``n`` vertices with minimum degree ``>= k-1``.

    Each candidate is tested for DP ``k``-criticality.  With ``prune`` a
    candidate properly containing an already known critical graph is skipped
    (such a graph is never critical).  Each hit is run through the dichotomy.
    """
    t0 = time.perf_counter()
    known = _known_critical(n, k) if prune else []
    t_known = time.perf_counter() - t0
    cands = list(enumerate_graphs(n, min_degree=k - 1, max_edges=max_edges))
    t_enum = time.perf_counter() - t0 - t_known
    hits: list[MultiGraph] = []
    pruned = 0
    todo = []
    for g in cands:
        if prune and any(contains_subgraph(g, h) for h in known):
            pruned += 1
            continue
        todo.append(g)
    t1 = time.perf_counter()
    if jobs > 1:
        # workers test every candidate; the same-n pruning is replayed
        # afterwards so the report matches a single-process run exactly
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_examine, [(g, k) for g in todo], chunksize=4))
        verdicts = iter(hit for hit, _ in results)
    else:
        verdicts = None
    for g in todo:
        if prune and any(contains_subgraph(g, h) for h in hits):
            pruned += 1
            if verdicts is not None:
                next(verdicts)
            continue
        hit = next(verdicts) if verdicts is not None else _examine((g, k))[0]
        if hit:
            hits.append(g)
    t_crit = time.perf_counter() - t1
    outcomes = {"exceptional": 0, "bound": 0, "neither": 0}
    details = []
    for g in hits:
        two_conn = g.n >= 3 and len(blocks(g).blocks) == 1
        if k == 4:
            try:
                outcome = check_theorem_bound(g, verified=True)
            except AssertionError:
                outcome = "neither"
            outcomes[outcome] += 1
        else:
            outcome = None
        details.append({"graph6": encode(g).decode(), "edges": g.num_edges,
                        "min_degree": g.min_degree, "two_connected": two_conn,
                        "outcome": outcome})
    if prune and max_edges is None:
        _HIT_CACHE[(n, k)] = hits
    return ScanReport(
        n=n, k=k, max_edges=max_edges, candidates=len(cands), pruned_by_subgraph=pruned,
        critical_hits=[d["graph6"] for d in details],
        min_edges=min((g.num_edges for g in hits), default=None),
        dichotomy_outcomes=outcomes, hit_details=details,
        runtimes={"smaller_scans": round(t_known, 3), "enumeration": round(t_enum, 3),
                  "criticality": round(t_crit, 3),
                  "total": round(time.perf_counter() - t0, 3)})


# list criticality -------------------------------------------------------------

def is_list_k_critical(g: MultiGraph, k: int, palette: int | None = None) -> bool:
    """Not ``(k-1)``-choosable while every ``g - e`` is.  Exponential; tiny graphs only."""
    from .solver import is_k_choosable
    if is_k_choosable(g, k - 1, palette):
        return False
    return all(is_k_choosable(sub, k - 1, palette) for sub, _ in _proper_pieces(g))


def list_critical_spot_check(hits: Sequence[MultiGraph], palette: int | None = None) -> list[dict]:
    """For hits off ``n in {4, 7, 10}``: list 4-critical ones satisfy ``5m >= 8n + 1``."""
    out = []
    for g in hits:
        if g.n in (4, 7, 10):
            out.append({"graph6": encode(g).decode(), "skipped": True})
            continue
        lc = is_list_k_critical(g, 4, palette)
        out.append({"graph6": encode(g).decode(), "skipped": False, "list_critical": lc,
                    "bound": 5 * g.num_edges >= 8 * g.n + 1})
    return out


# the (H,L)-minimal check -------------------------------------------------------------

def has_exceptional_subgraph(g: MultiGraph, h: Sequence[int]) -> bool:
    """Some subgraph is a 4-Ore graph on at most 10 vertices with ``h = 3`` on it.

    Searched as a (not necessarily induced) subgraph of the simple graph
    underlying ``g[{v : h(v) = 3}]``.
    """
    from .ore import _cached_atlas
    threes = [v for v in range(g.n) if h[v] == 3]
    if len(threes) < 4:
        return False
    sub = g.induced(threes).underlying_simple()
    for f, _ in _cached_atlas(10):
        if f.n <= sub.n and contains_subgraph(sub, f):
            return True
    return False


@dataclass
class MinimalCoverReport:
    graphs: int = 0
    pairs: int = 0
    pairs_skipped_exceptional: int = 0
    pairs_settled_by_potential: int = 0
    covers: int = 0
    uncolourable: int = 0
    minimal: int = 0
    violations: list[dict] = field(default_factory=list)
    too_large: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "MinimalCoverReport"):
        for name in ("graphs", "pairs", "pairs_skipped_exceptional",
                     "pairs_settled_by_potential", "covers",
                     "uncolourable", "minimal", "too_large"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.violations.extend(other.violations)


def _check_pair(g: MultiGraph, h: tuple[int, ...], report: MinimalCoverReport,
                mode: str, max_covers: int, sample: int | None, rng: random.Random,
                full: bool = True):
    report.pairs += 1
    value = rho(g, h)
    if not full and value <= -1:
        # the conclusion holds whatever the covers are
        report.pairs_settled_by_potential += 1
        return
    if has_exceptional_subgraph(g, h):
        report.pairs_skipped_exceptional += 1
        return
    if min(h) == 0:
        # an empty list kills every colouring; minimal only as a lone vertex
        report.covers += 1
        report.uncolourable += 1
        if g.n == 1:
            report.minimal += 1
            if rho(g, h) > -1:
                report.violations.append({"graph": encode(g).decode(), "h": h})
        return
    try:
        space = cover_space(g, h, mode, max_size=max_covers if sample is None else None)
    except SpaceTooLarge:
        report.too_large += 1
        return
    if sample is None:
        covers = iter(space)
    else:
        covers = (space.cover([rng.randrange(len(o)) for o in space.options])
                  for _ in range(sample))
    for c in covers:
        report.covers += 1
        if _colourable_fast(g, c):
            continue
        report.uncolourable += 1
        if _edge_deletions_colourable(g, c):
            report.minimal += 1
            if value > -1:
                report.violations.append({"graph": encode(g).decode(), "h": h, "rho": value})


def check_minimal_covers(n: int, mode: str = "gauge", max_mult: int = 3, max_covers: int = 200_000,
                    sample_pairs: int | None = None, covers_per_pair: int | None = None,
                    seed: int = 0, full: bool = False) -> MinimalCoverReport:
    """Every ``(H, L)``-minimal ``(g, h, c)`` without exceptional subgraph has ``rho <= -1``.

    Exhaustive over connected multigraphs on ``n`` vertices (multiplicity at
    most ``max_mult``), all ``h`` in ``{0..3}^n`` and every cover of the
    chosen cover space, unless ``sample_pairs`` / ``covers_per_pair`` ask for
    a seeded random sample instead.  Pairs with ``rho <= -1`` cannot violate
    the claim; unless ``full`` they are counted as settled and their covers
    are not enumerated.
    """
    rng = random.Random(seed)
    report = MinimalCoverReport()
    graphs = list(enumerate_multigraphs(n, max_mult)) if n <= 4 else \
        list(enumerate_graphs(n))
    report.graphs = len(graphs)
    pairs = [(g, h) for g in graphs for h in product(range(4), repeat=n)]
    if sample_pairs is not None and sample_pairs < len(pairs):
        pairs = rng.sample(pairs, sample_pairs)
    for g, h in pairs:
        _check_pair(g, h, report, mode, max_covers, covers_per_pair, rng, full)
    return report


def sample_minimal_covers(n: int, pairs: int, max_mult: int = 3, mode: str = "gauge",
                     covers_per_pair: int | None = None, max_covers: int = 200_000,
                     seed: int = 0, full: bool = False) -> MinimalCoverReport:
    """Seeded random connected multigraphs on ``n`` vertices with random ``h``."""
    from .potential import random_multigraph
    rng = random.Random(seed)
    report = MinimalCoverReport()
    seen = set()
    while report.pairs < pairs:
        g = random_multigraph(rng, n, max_mult, density=rng.uniform(0.3, 0.9))
        if not g.is_connected:
            continue
        seen.add(canonical_form(g))
        h = tuple(rng.randint(0, 3) for _ in range(n))
        _check_pair(g, h, report, mode, max_covers, covers_per_pair, rng, full)
    report.graphs = len(seen)
    return report


# cycle covers ---------------------------------------------------------------------------

def cover_graph(g: MultiGraph, c: Cover) -> MultiGraph:
    """``H`` as a simple graph on ``sum(list_size)`` vertices."""
    offset = [0]
    for size in c.list_size:
        offset.append(offset[-1] + size)
    edges = [(offset[u] + i, offset[v] + j) for (u, i), (v, j) in c.edge_set()]
    return MultiGraph.from_edges(offset[-1], edges)


@dataclass
class CycleCoverReport:
    length: int
    mode: str
    covers: int
    uncolourable: int
    matching_shape: int

    @property
    def ok(self) -> bool:
        return self.uncolourable == self.matching_shape and self.uncolourable > 0


def check_cycle_covers(length: int, mode: str = "gauge") -> CycleCoverReport:
    """Every uncolourable 2-cover of ``C_length`` has the predicted ``H``.

    Odd cycles: two disjoint copies of the cycle.  Even: one cycle of twice
    the length.
    """
    g = cycle_graph(length)
    if length % 2:
        target = canonical_form(cycle_graph(length).disjoint_union(cycle_graph(length)))
    else:
        target = canonical_form(cycle_graph(2 * length))
    space = cover_space(g, (2,) * length, mode)
    total = bad = good_shape = 0
    for c in space:
        total += 1
        if find_transversal(g, c) is None:
            bad += 1
            if canonical_form(cover_graph(g, c)) == target:
                good_shape += 1
    return CycleCoverReport(length, mode, total, bad, good_shape)
