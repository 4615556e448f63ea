"""Canonical labelling of small multigraphs.

Colour refinement to an equitable ordered partition, then individualisation
of the first smallest non-singleton cell, recursively.  Each leaf is a
discrete partition, i.e. a relabelling; the canonical label is the
lexicographically least relabelled multiplicity table.  Automorphisms found
along the way (two leaves with equal tables) prune sibling branches lying in
the same orbit of the pointwise stabiliser of the current prefix.
"""

from __future__ import annotations

from typing import Sequence

from .multigraph import MultiGraph

Partition = list[list[int]]


def _refine(mult: Sequence[Sequence[int]], cells: Partition) -> Partition:
    """Refine an ordered partition until it is equitable.

    Cells are split by the multiset of (cell index, multiplicity) towards every
    cell; split pieces are ordered by their signature, so the result only
    depends on the graph and the input partition, never on vertex names.
    """
    n = len(mult)
    while True:
        cell_of = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new_cells: Partition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs = {}
            for v in cell:
                row = mult[v]
                sig = tuple(sorted((cell_of[u], row[u]) for u in range(n) if row[u]))
                sigs.setdefault(sig, []).append(v)
            if len(sigs) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for sig in sorted(sigs):
                new_cells.append(sigs[sig])
        cells = new_cells
        if not changed:
            return cells


def _table(mult: Sequence[Sequence[int]], order: Sequence[int]) -> bytes:
    n = len(order)
    return bytes(mult[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))


class _Search:
    def __init__(self, mult):
        self.mult = mult
        self.n = len(mult)
        self.best: bytes | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []

    def run(self, cells: Partition, prefix: list[int]):
        cells = _refine(self.mult, cells)
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            table = _table(self.mult, order)
            if self.best is None or table < self.best:
                self.best, self.best_order = table, order
            elif table == self.best:
                # order and best_order are two labellings giving equal tables
                auto = [0] * self.n
                for a, b in zip(order, self.best_order):
                    auto[a] = b
                if auto != list(range(self.n)):
                    self.autos.append(auto)
            return
        target = min((i for i, c in enumerate(cells) if len(c) > 1),
                     key=lambda i: (len(cells[i]), i))
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if explored and self._same_orbit(v, explored, prefix):
                continue
            explored.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            self.run(child, prefix + [v])

    def _same_orbit(self, v: int, explored: list[int], prefix: list[int]) -> bool:
        gens = [a for a in self.autos if all(a[p] == p for p in prefix)]
        if not gens:
            return False
        orbit = set(explored)
        frontier = list(explored)
        while frontier:
            x = frontier.pop()
            for a in gens:
                y = a[x]
                if y not in orbit:
                    if y == v:
                        return True
                    orbit.add(y)
                    frontier.append(y)
        return v in orbit


def canonical_order(g: MultiGraph) -> list[int]:
    """Vertex order ``order`` such that ``order[i]`` gets canonical label ``i``."""
    if g.n == 0:
        return []
    init: dict[tuple, list[int]] = {}
    for v in range(g.n):
        key = (g.degrees[v], tuple(sorted(s for s in g.mult[v] if s)))
        init.setdefault(key, []).append(v)
    cells = [init[k] for k in sorted(init)]
    search = _Search(g.mult)
    search.run(cells, [])
    return search.best_order


def canonical_form(g: MultiGraph) -> bytes:
    """Byte label equal for two multigraphs iff they are isomorphic."""
    order = canonical_order(g)
    return bytes([g.n]) + _table(g.mult, order)


def canonical_graph(g: MultiGraph) -> MultiGraph:
    order = canonical_order(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def is_isomorphic(a: MultiGraph, b: MultiGraph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees) != sorted(b.degrees):
        return False
    return canonical_form(a) == canonical_form(b)
