"""Exhaustive enumeration of small graphs up to isomorphism."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .canon import canonical_form, canonical_graph
from .multigraph import MAX_MULT, MultiGraph

PRACTICAL_MAX_N = 8
HARD_MAX_N = 10


def enumerate_graphs(n: int, min_degree: int = 0, max_edges: int | None = None,
                     connected: bool = True) -> Iterator[MultiGraph]:
    """One canonical representative per isomorphism class of simple graphs.

    Classes are grown one edge at a time from the empty graph and deduplicated
    by canonical label at every level, so each level is complete.  Output is
    ordered by edge count, then by canonical label.
    """
    if n > HARD_MAX_N:
        raise ValueError(f"n={n} exceeds the enumeration ceiling {HARD_MAX_N}")
    if n == 0:
        return
    all_pairs = list(combinations(range(n), 2))
    top = len(all_pairs) if max_edges is None else min(max_edges, len(all_pairs))
    level = {canonical_form(MultiGraph.empty(n)): MultiGraph.empty(n)}
    for m in range(top + 1):
        for label in sorted(level):
            g = level[label]
            if min(g.degrees) >= min_degree and (not connected or g.is_connected):
                yield g
        if m == top:
            break
        nxt: dict[bytes, MultiGraph] = {}
        for g in level.values():
            for u, v in all_pairs:
                if g.mult[u][v]:
                    continue
                h = g.add_edge(u, v)
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = canonical_graph(h)
        level = nxt


def enumerate_multigraphs(n: int, max_mult: int = MAX_MULT,
                          connected: bool = True) -> Iterator[MultiGraph]:
    """All multigraphs on ``n`` vertices with multiplicities ``<= max_mult``.

    Brute force over labelled multiplicity tables, deduplicated canonically;
    meant for ``n <= 4``.
    """
    pairs = list(combinations(range(n), 2))
    seen: dict[bytes, MultiGraph] = {}
    for values in product(range(max_mult + 1), repeat=len(pairs)):
        m = [[0] * n for _ in range(n)]
        for (u, v), s in zip(pairs, values):
            m[u][v] = m[v][u] = s
        g = MultiGraph.from_matrix(m)
        if connected and not g.is_connected:
            continue
        key = canonical_form(g)
        if key not in seen:
            seen[key] = canonical_graph(g)
    yield from (seen[k] for k in sorted(seen, key=lambda k: (seen[k].num_edges, k)))
