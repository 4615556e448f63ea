"""Loopless multigraphs stored as a symmetric multiplicity table.

Vertices are the integers ``0..n-1``.  Graphs are immutable; every operation
that changes structure returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_MULT = 3


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    n: int
    mult: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.mult) != self.n or any(len(row) != self.n for row in self.mult):
            raise GraphError("multiplicity table must be n x n")
        for u in range(self.n):
            if self.mult[u][u]:
                raise GraphError(f"loop at vertex {u}")
            for v in range(u + 1, self.n):
                s = self.mult[u][v]
                if s != self.mult[v][u]:
                    raise GraphError(f"asymmetric multiplicity at ({u}, {v})")
                if s < 0 or s > MAX_MULT:
                    raise GraphError(f"multiplicity {s} at ({u}, {v}) outside 0..{MAX_MULT}")

    # construction -------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "MultiGraph":
        return cls(n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Build from an edge list; repeated pairs become parallel edges."""
        m = [[0] * n for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            m[u][v] += 1
            m[v][u] += 1
        return cls(n, tuple(map(tuple, m)))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "MultiGraph":
        return cls(len(rows), tuple(tuple(int(x) for x in r) for r in rows))

    # basic queries -------------------------------------------------------

    def __str__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges())})"

    def degree(self, v: int) -> int:
        return sum(self.mult[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def neighbors(self, v: int) -> list[int]:
        return [u for u, s in enumerate(self.mult[v]) if s]

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u, s in enumerate(row) if s) for row in self.mult)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Adjacent pairs ``(u, v, s)`` with ``u < v`` and multiplicity ``s``."""
        for u in range(self.n):
            row = self.mult[u]
            for v in range(u + 1, self.n):
                if row[v]:
                    yield u, v, row[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges with repetition for parallel pairs, ``u < v``, sorted."""
        for u, v, s in self.pairs():
            for _ in range(s):
                yield u, v

    @property
    def is_simple(self) -> bool:
        return all(s <= 1 for _, _, s in self.pairs())

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def edges_within(self, vertices: Iterable[int]) -> int:
        vs = sorted(set(vertices))
        return sum(self.mult[u][v] for u, v in combinations(vs, 2))

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> int:
        b = list(b)
        return sum(self.mult[u][v] for u in a for v in b)

    # structural edits ----------------------------------------------------

    def _edited(self, changes: dict[tuple[int, int], int]) -> "MultiGraph":
        m = [list(r) for r in self.mult]
        for (u, v), s in changes.items():
            m[u][v] = m[v][u] = s
        return MultiGraph(self.n, tuple(map(tuple, m)))

    def add_edge(self, u: int, v: int, count: int = 1) -> "MultiGraph":
        return self._edited({(u, v): self.mult[u][v] + count})

    def remove_edge(self, u: int, v: int) -> "MultiGraph":
        if not self.mult[u][v]:
            raise GraphError(f"no edge ({u}, {v})")
        return self._edited({(u, v): self.mult[u][v] - 1})

    def induced(self, vertices: Iterable[int]) -> "MultiGraph":
        """Induced subgraph, reindexed in increasing vertex order."""
        vs = sorted(set(vertices))
        return MultiGraph(len(vs), tuple(tuple(self.mult[u][v] for v in vs) for u in vs))

    def remove_vertices(self, vertices: Iterable[int]) -> "MultiGraph":
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def relabel(self, perm: Sequence[int]) -> "MultiGraph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        inv = [0] * self.n
        for old, new in enumerate(perm):
            inv[new] = old
        return MultiGraph(self.n, tuple(tuple(self.mult[inv[a]][inv[b]] for b in range(self.n))
                                        for a in range(self.n)))

    def disjoint_union(self, other: "MultiGraph") -> "MultiGraph":
        n = self.n + other.n
        rows = [list(r) + [0] * other.n for r in self.mult]
        rows += [[0] * self.n + list(r) for r in other.mult]
        return MultiGraph(n, tuple(map(tuple, rows)))

    def underlying_simple(self) -> "MultiGraph":
        return MultiGraph(self.n, tuple(tuple(min(s, 1) for s in r) for r in self.mult))

    # connectivity --------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for v in self.neighbors(u):
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bfs_order(self, root: int = 0) -> list[int]:
        """BFS order over every component, neighbours ascending."""
        seen = [False] * self.n
        order: list[int] = []
        for r in [root] + list(range(self.n)):
            if r >= self.n or seen[r]:
                continue
            seen[r] = True
            queue = deque([r])
            while queue:
                u = queue.popleft()
                order.append(u)
                for v in self.neighbors(u):
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
        return order

    def bfs_parents(self, root: int = 0) -> list[int]:
        """Parent of each vertex in the BFS forest (``-1`` at roots)."""
        parent = [-1] * self.n
        seen = [False] * self.n
        for r in [root] + list(range(self.n)):
            if r >= self.n or seen[r]:
                continue
            seen[r] = True
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for v in self.neighbors(u):
                    if not seen[v]:
                        seen[v] = True
                        parent[v] = u
                        queue.append(v)
        return parent


def degree(g: MultiGraph, v: int) -> int:
    return g.degree(v)


# named graphs ------------------------------------------------------------

def complete_graph(n: int, t: int = 1) -> MultiGraph:
    return MultiGraph(n, tuple(tuple(0 if u == v else t for v in range(n)) for u in range(n)))


def cycle_graph(n: int, t: int = 1) -> MultiGraph:
    """``C_n^t``; ``n = 2`` gives a single pair of multiplicity ``2t``."""
    return MultiGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n) for _ in range(t)])


def path_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> MultiGraph:
    return MultiGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# vertex split ----------------------------------------------------------------

def edge_slots(g: MultiGraph, u: int) -> list[int]:
    """Incident edge slots of ``u``: each neighbour repeated by multiplicity."""
    return [v for v in range(g.n) for _ in range(g.mult[u][v])]


def split_vertex(g: MultiGraph, u: int, part: Iterable[int]) -> MultiGraph:
    """Split ``u`` into two vertices along a bipartition of its edge slots.

    ``part`` lists indices into :func:`edge_slots` that go to the first new
    vertex; the rest go to the second.  After removing ``u`` the survivors are
    reindexed in order, and the new vertices are appended at ``n-1`` and ``n``.
    """
    slots = edge_slots(g, u)
    first = set(part)
    if not first or len(first) == len(slots) or not first <= set(range(len(slots))):
        raise GraphError("both sides of a split must be nonempty")
    rest = [v for v in range(g.n) if v != u]
    index = {v: i for i, v in enumerate(rest)}
    u1, u2 = g.n - 1, g.n
    edges = [(index[a], index[b]) for a, b in g.edges() if u not in (a, b)]
    for k, w in enumerate(slots):
        edges.append((u1 if k in first else u2, index[w]))
    return MultiGraph.from_edges(g.n + 1, edges)


# blocks and edge-blocks ----------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


@dataclass(frozen=True)
class EdgeBlockDecomposition:
    edge_blocks: tuple[frozenset[int], ...]
    bridges: tuple[tuple[int, int], ...]
    # 2-edge-connected pieces (including isolated single vertices), in the
    # same order as their first appearance in ``edge_blocks``
    components: tuple[frozenset[int], ...] = ()


def _require_connected(g: MultiGraph):
    if not g.is_connected:
        raise GraphError("graph must be connected")


def blocks(g: MultiGraph) -> BlockDecomposition:
    """Biconnected components via Hopcroft-Tarjan (iterative)."""
    _require_connected(g)
    if g.n == 1:
        return BlockDecomposition((frozenset([0]),), frozenset())
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[frozenset[int]] = []
    cuts: set[int] = set()
    stack: list[tuple[int, int]] = []
    timer = 0
    disc[0] = low[0] = timer
    root_children = 0
    work = [(0, -1, iter(g.neighbors(0)))]
    while work:
        u, parent, it = work[-1]
        advanced = False
        for v in it:
            if disc[v] == -1:
                timer += 1
                disc[v] = low[v] = timer
                stack.append((u, v))
                work.append((v, u, iter(g.neighbors(v))))
                if u == 0:
                    root_children += 1
                advanced = True
                break
            if v != parent and disc[v] < disc[u]:
                stack.append((u, v))
                low[u] = min(low[u], disc[v])
        if advanced:
            continue
        work.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != 0:
                    cuts.add(parent)
                comp = set()
                while True:
                    a, b = stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                found.append(frozenset(comp))
    if root_children > 1:
        cuts.add(0)
    found.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(found), frozenset(cuts))


def bridges(g: MultiGraph) -> list[tuple[int, int]]:
    """Cut edges: simple pairs whose removal disconnects their component."""
    out = []
    base = len(g.components())
    for u, v, s in g.pairs():
        if s == 1 and len(g.remove_edge(u, v).components()) > base:
            out.append((u, v))
    return out


def edge_blocks(g: MultiGraph) -> EdgeBlockDecomposition:
    """Edge-blocks: every cut edge, plus each bridgeless piece with an edge."""
    _require_connected(g)
    cut = bridges(g)
    h = g
    for u, v in cut:
        h = h.remove_edge(u, v)
    comps = [frozenset(c) for c in h.components()]
    pieces = [c for c in comps if len(c) > 1 or g.n == 1]
    pieces += [frozenset(e) for e in cut]
    pieces.sort(key=lambda b: (sorted(b)))
    return EdgeBlockDecomposition(tuple(pieces), tuple(cut), tuple(sorted(comps, key=sorted)))


# GDP-trees -------------------------------------------------------------------

def classify_block(g: MultiGraph, block: Iterable[int]) -> tuple[str, int] | None:
    """Return ``("K", t)`` or ``("C", t)`` if the block is ``K_s^t`` / ``C_s^t``.

    Two-vertex blocks count as complete graphs, so ``K_2^t`` is a ``K``.
    """
    vs = sorted(block)
    s = len(vs)
    if s == 1:
        return ("K", 0)
    ms = [g.mult[u][v] for u, v in combinations(vs, 2)]
    nonzero = {x for x in ms if x}
    if len(nonzero) != 1:
        return None
    (t,) = nonzero
    if all(ms):
        return ("K", t)
    if s >= 4 and all(sum(1 for w in vs if g.mult[u][w]) == 2 for u in vs):
        # 2-regular and 2-connected, hence a spanning cycle
        return ("C", t)
    return None


def is_gdp_tree(g: MultiGraph) -> bool:
    """Every block is a uniform multiple of a complete graph or a cycle."""
    if not g.is_connected:
        return False
    return all(classify_block(g, b) is not None for b in blocks(g).blocks)


def is_gdp_forest(g: MultiGraph) -> bool:
    return all(is_gdp_tree(g.induced(c)) for c in g.components())
