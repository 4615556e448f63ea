"""DP-covers ``(H, L)`` of a multigraph, stored index-wise.

Colours of ``L(v)`` are the indices ``0..list_size[v]-1``.  For every adjacent
pair ``u < v`` of multiplicity ``s`` the cover keeps ``s`` matchings, each a
frozenset of index pairs ``(i, j)`` with ``i`` in ``L(u)`` and ``j`` in ``L(v)``.

Covers used for deciding colourability come from a :class:`CoverSpace`: per
pair, the conflict graph between two lists is any bipartite graph of maximum
degree at most ``s`` (these are exactly the unions of ``s`` matchings), and
since extra conflicts never help the colourer only the inclusion-maximal ones
are enumerated.  For ``s = 1`` these are the maximum matchings.  On a BFS
spanning forest each child's colour permutation is spent normalising the pair
towards its parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, permutations
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

from .graph_io import decode, encode
from .multigraph import MultiGraph

Matching = frozenset  # of (i, j) index pairs
Rows = tuple[int, ...]  # rows[i] = bitmask over L(v) of colours in conflict with (u, i)


class CoverError(ValueError):
    pass


class SpaceTooLarge(CoverError):
    pass


@dataclass(frozen=True)
class Cover:
    list_size: tuple[int, ...]
    matchings: Mapping[tuple[int, int], tuple[Matching, ...]] = field(hash=False)

    def rows(self, u: int, v: int) -> Rows:
        """Conflict rows of the pair, oriented from ``u`` to ``v``."""
        if u < v:
            rows = [0] * self.list_size[u]
            for m in self.matchings.get((u, v), ()):
                for i, j in m:
                    rows[i] |= 1 << j
            return tuple(rows)
        return transpose(self.rows(v, u), self.list_size[u])

    @cached_property
    def conflicts(self) -> list[list[list[tuple[int, int]]]]:
        """``conflicts[u][i]`` lists ``(v, mask)`` for every neighbour ``v``."""
        n = len(self.list_size)
        out = [[[] for _ in range(self.list_size[u])] for u in range(n)]
        for (u, v) in self.matchings:
            r = self.rows(u, v)
            for i, mask in enumerate(r):
                if mask:
                    out[u][i].append((v, mask))
            for j, mask in enumerate(transpose(r, self.list_size[v])):
                if mask:
                    out[v][j].append((u, mask))
        return out

    def edge_set(self) -> set[tuple[tuple[int, int], tuple[int, int]]]:
        """Edges of ``H`` as pairs of ``(vertex, colour)`` nodes."""
        out = set()
        for (u, v), ms in self.matchings.items():
            for m in ms:
                for i, j in m:
                    out.add(((u, i), (v, j)))
        return out

    def without_edge(self, u: int, v: int, k: int) -> "Cover":
        """Drop the ``k``-th matching of the pair, i.e. the cover of ``G - e``."""
        if u > v:
            u, v = v, u
        ms = list(self.matchings[(u, v)])
        del ms[k]
        new = dict(self.matchings)
        if ms:
            new[(u, v)] = tuple(ms)
        else:
            del new[(u, v)]
        return Cover(self.list_size, new)


def transpose(rows: Sequence[int], width: int) -> Rows:
    cols = [0] * width
    for i, mask in enumerate(rows):
        j = 0
        while mask:
            if mask & 1:
                cols[j] |= 1 << i
            mask >>= 1
            j += 1
    return tuple(cols)


def rows_from_matchings(ms: Iterable[Iterable[tuple[int, int]]], a: int) -> Rows:
    rows = [0] * a
    for m in ms:
        for i, j in m:
            rows[i] |= 1 << j
    return tuple(rows)


# validation ------------------------------------------------------------------

def problems(g: MultiGraph, c: Cover) -> list[str]:
    out = []
    if len(c.list_size) != g.n:
        return [f"cover has {len(c.list_size)} lists for {g.n} vertices"]
    if any(x < 0 for x in c.list_size):
        out.append("negative list size")
    for (u, v), ms in c.matchings.items():
        if not (0 <= u < v < g.n):
            out.append(f"bad pair key {(u, v)}")
            continue
        if g.mult[u][v] == 0 and any(ms):
            out.append(f"conflicts on non-adjacent pair {(u, v)}")
    for u, v, s in g.pairs():
        ms = c.matchings.get((u, v), ())
        if len(ms) != s:
            out.append(f"pair {(u, v)} carries {len(ms)} matchings, expected {s}")
        seen: set[tuple[int, int]] = set()
        for m in ms:
            left = [i for i, _ in m]
            right = [j for _, j in m]
            if len(set(left)) != len(left) or len(set(right)) != len(right):
                out.append(f"pair {(u, v)}: not a matching")
            if any(not (0 <= i < c.list_size[u]) for i in left) or \
                    any(not (0 <= j < c.list_size[v]) for j in right):
                out.append(f"pair {(u, v)}: colour index out of range")
            if seen & set(m):
                out.append(f"pair {(u, v)}: matchings overlap, H would have parallel edges")
            seen |= set(m)
    return out


def validate(g: MultiGraph, c: Cover) -> bool:
    return not problems(g, c)


# constructors ------------------------------------------------------------------

def identity_cover(g: MultiGraph, list_size: Sequence[int]) -> Cover:
    """Every pair gets the identity matching plus empty ones for extra edges.

    With equal lists this is ordinary colouring from ``{0..k-1}``.
    """
    ms = {}
    for u, v, s in g.pairs():
        ident = frozenset((i, i) for i in range(min(list_size[u], list_size[v])))
        ms[(u, v)] = (ident,) + (frozenset(),) * (s - 1)
    return Cover(tuple(list_size), ms)


def cover_from_lists(g: MultiGraph, lists: Sequence[Iterable]) -> Cover:
    """The cover whose colourings are exactly the ``L``-colourings of ``g``."""
    idx = [sorted(set(lst), key=repr) for lst in lists]
    pos = [{col: i for i, col in enumerate(lst)} for lst in idx]
    ms = {}
    for u, v, s in g.pairs():
        m = frozenset((i, pos[v][col]) for i, col in enumerate(idx[u]) if col in pos[v])
        ms[(u, v)] = (m,) + (frozenset(),) * (s - 1)
    return Cover(tuple(len(x) for x in idx), ms)


def restrict_cover(g: MultiGraph, c: Cover, f: Mapping[int, int], x: Iterable[int]
                   ) -> tuple[MultiGraph, Cover, list[list[int]]]:
    """Cover of ``g[x]`` left after colouring ``V - x`` by ``f``.

    Colours of ``L(v)`` adjacent in ``H`` to some ``f``-colour are removed and
    the survivors reindexed.  Also returns, per vertex of ``g[x]``, the
    surviving original colour indices.
    """
    xs = sorted(set(x))
    outside = [v for v in range(g.n) if v not in set(xs)]
    if sorted(f) != outside:
        raise CoverError("f must colour exactly the vertices outside x")
    for u in outside:
        if not 0 <= f[u] < c.list_size[u]:
            raise CoverError(f"f({u}) out of range")
        for v, mask in c.conflicts[u][f[u]]:
            if v in f and (mask >> f[v]) & 1:
                raise CoverError(f"f is not independent at ({u}, {v})")
    keep = []
    for v in xs:
        dead = 0
        for u in outside:
            if g.mult[u][v]:
                dead |= c.rows(u, v)[f[u]]
        keep.append([i for i in range(c.list_size[v]) if not (dead >> i) & 1])
    sub = g.induced(xs)
    new_index = [{old: k for k, old in enumerate(kp)} for kp in keep]
    ms = {}
    for a, b, _ in sub.pairs():
        u, v = xs[a], xs[b]
        ms[(a, b)] = tuple(
            frozenset((new_index[a][i], new_index[b][j]) for i, j in m
                      if i in new_index[a] and j in new_index[b])
            for m in c.matchings[(u, v)])
    return sub, Cover(tuple(len(k) for k in keep), ms), keep


# per-pair option sets ---------------------------------------------------------

def all_matchings(a: int, b: int) -> list[tuple[tuple[int, int], ...]]:
    """Every matching of ``K_{a,b}`` (the empty one included), sorted."""
    out = []

    def rec(i: int, used: int, cur: list):
        if i == a:
            out.append(tuple(cur))
            return
        rec(i + 1, used, cur)
        for j in range(b):
            if not (used >> j) & 1:
                cur.append((i, j))
                rec(i + 1, used | (1 << j), cur)
                cur.pop()

    rec(0, 0, [])
    return sorted(out)


@lru_cache(maxsize=None)
def maximal_union_graphs(a: int, b: int, s: int) -> tuple[Rows, ...]:
    """Inclusion-maximal bipartite graphs on ``a + b`` vertices, max degree ``<= s``.

    Returned as rows (bitmask per left vertex), sorted lexicographically.
    """
    if a == 0 or b == 0 or s == 0:
        return ((0,) * a,)
    if s >= max(a, b):
        return (tuple([(1 << b) - 1] * a),)
    if s == 1:
        k = min(a, b)
        out = []
        if a <= b:
            for img in permutations(range(b), a):
                out.append(tuple(1 << j for j in img))
        else:
            for src in permutations(range(a), b):
                rows = [0] * a
                for j, i in enumerate(src):
                    rows[i] = 1 << j
                out.append(tuple(rows))
        assert all(sum(bin(r).count("1") for r in rows) == k for rows in out)
        return tuple(sorted(out))
    cells = [(i, j) for i in range(a) for j in range(b)]
    found = []
    rows = [0] * a
    ldeg = [0] * a
    rdeg = [0] * b

    def rec(k: int):
        if k == len(cells):
            for i, j in cells:
                if not (rows[i] >> j) & 1 and ldeg[i] < s and rdeg[j] < s:
                    return
            found.append(tuple(rows))
            return
        i, j = cells[k]
        if ldeg[i] < s and rdeg[j] < s:
            rows[i] |= 1 << j
            ldeg[i] += 1
            rdeg[j] += 1
            rec(k + 1)
            rows[i] ^= 1 << j
            ldeg[i] -= 1
            rdeg[j] -= 1
        rec(k + 1)

    rec(0)
    return tuple(sorted(found))


# above this many cells the s >= 2 option sets are not enumerated at all
MAX_UNION_CELLS = 16


def count_maximal_union_graphs(a: int, b: int, s: int) -> int | None:
    """Size of :func:`maximal_union_graphs`; ``None`` if too large to list."""
    if a == 0 or b == 0 or s == 0 or s >= max(a, b):
        return 1
    if s == 1:
        hi, lo = max(a, b), min(a, b)
        return prod(range(hi - lo + 1, hi + 1))
    if a * b > MAX_UNION_CELLS:
        return None
    return len(maximal_union_graphs(a, b, s))


def decompose(rows: Sequence[int], a: int, b: int, s: int) -> tuple[Matching, ...]:
    """Split a bipartite graph of max degree ``<= s`` into ``s`` matchings.

    Greedy edge colouring repaired by swapping two-coloured alternating paths
    (Konig's theorem), deterministic in edge order.
    """
    colour_at_left = [dict() for _ in range(a)]   # colour -> right vertex
    colour_at_right = [dict() for _ in range(b)]  # colour -> left vertex
    for i in range(a):
        for j in range(b):
            if not (rows[i] >> j) & 1:
                continue
            alpha = next(c for c in range(s) if c not in colour_at_left[i])
            beta = next(c for c in range(s) if c not in colour_at_right[j])
            if alpha not in colour_at_right[j]:
                colour_at_left[i][alpha] = j
                colour_at_right[j][alpha] = i
                continue
            # walk the alpha/beta path from j and swap its colours
            path = []
            side, x, c = "R", j, alpha
            while True:
                table = colour_at_right if side == "R" else colour_at_left
                if c not in table[x]:
                    break
                y = table[x][c]
                path.append((side, x, y, c))
                side = "L" if side == "R" else "R"
                x = y
                c = beta if c == alpha else alpha
            for side, x, y, c in path:
                if side == "R":
                    del colour_at_right[x][c]
                    del colour_at_left[y][c]
                else:
                    del colour_at_left[x][c]
                    del colour_at_right[y][c]
            for side, x, y, c in path:
                other = beta if c == alpha else alpha
                if side == "R":
                    colour_at_right[x][other] = y
                    colour_at_left[y][other] = x
                else:
                    colour_at_left[x][other] = y
                    colour_at_right[y][other] = x
            colour_at_left[i][alpha] = j
            colour_at_right[j][alpha] = i
    ms = [set() for _ in range(s)]
    for i in range(a):
        for c, j in colour_at_left[i].items():
            ms[c].add((i, j))
    return tuple(frozenset(m) for m in ms)


def _canonical_under_child(rows: Rows, a: int, b: int, child_is_v: bool) -> Rows:
    """Representative of ``rows`` modulo permutations of the child's colours.

    Matched child colours come first in increasing order of their pattern, so
    a perfect matching normalises to the identity.
    """
    key = lambda m: (m == 0, m)
    if child_is_v:
        cols = sorted(transpose(rows, b), key=key)
        return transpose(cols, a)
    return tuple(sorted(rows, key=key))


@dataclass(frozen=True)
class PairOption:
    rows: Rows
    matchings: tuple[Matching, ...]


@dataclass
class CoverSpace:
    """A finite family of covers, one option chosen per slot.

    ``fixed`` pairs have a single option; ``slots`` are the remaining pairs in
    increasing order, each with its ordered list of options.
    """
    g: MultiGraph
    list_size: tuple[int, ...]
    fixed: dict[tuple[int, int], PairOption]
    slots: list[tuple[int, int]]
    options: list[list[PairOption]]
    mode: str = "gauge"

    @property
    def size(self) -> int:
        return prod(len(o) for o in self.options)

    def cover(self, choice: Sequence[int]) -> Cover:
        ms = {p: o.matchings for p, o in self.fixed.items()}
        for p, opts, k in zip(self.slots, self.options, choice):
            ms[p] = opts[k].matchings
        return Cover(self.list_size, dict(sorted(ms.items())))

    def __iter__(self) -> Iterator[Cover]:
        def rec(k: int, choice: list[int]):
            if k == len(self.slots):
                yield self.cover(choice)
                return
            for idx in range(len(self.options[k])):
                choice.append(idx)
                yield from rec(k + 1, choice)
                choice.pop()
        yield from rec(0, [])

    def word(self, choice: Sequence[int]) -> str:
        """Compact replay word: option index per slot, in slot order."""
        return ".".join(map(str, choice))


def cover_space(g: MultiGraph, list_size: Sequence[int], mode: str = "gauge",
                max_size: int | None = None) -> CoverSpace:
    """Build the cover family used to decide DP colourability.

    ``mode="gauge"``: maximal conflict graphs, with BFS-forest pairs reduced
    modulo the child's colour permutations.  ``mode="maximal"``: maximal
    conflict graphs, no gauge reduction.  ``mode="all"``: every valid cover
    (every multiset of ``s`` pairwise disjoint matchings), no reduction; for
    brute-force cross-checks on tiny inputs.
    """
    h = tuple(list_size)
    if mode not in ("gauge", "maximal", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    parent = g.bfs_parents() if mode == "gauge" else [-1] * g.n
    fixed: dict[tuple[int, int], PairOption] = {}
    slots, options = [], []
    total = 1
    for u, v, s in g.pairs():
        a, b = h[u], h[v]
        if mode == "all":
            ms = all_matchings(a, b)
            opts = []
            for combo in combinations_with_replacement(range(len(ms)), s):
                chosen = [ms[k] for k in combo]
                edges = [e for m in chosen for e in m]
                if len(edges) != len(set(edges)):
                    continue
                opts.append(PairOption(rows_from_matchings(chosen, a),
                                       tuple(frozenset(m) for m in chosen)))
        else:
            count = count_maximal_union_graphs(a, b, s)
            if count is None:
                raise SpaceTooLarge(f"pair {(u, v)} has too many conflict patterns to list")
            if max_size is not None and total * count > max_size and (parent[v] != u and parent[u] != v):
                raise SpaceTooLarge(f"cover space exceeds {max_size}")
            graphs = maximal_union_graphs(a, b, s)
            if parent[v] == u or parent[u] == v:
                child_is_v = parent[v] == u
                reps = sorted({_canonical_under_child(r, a, b, child_is_v) for r in graphs})
                graphs = tuple(reps)
            opts = [PairOption(r, decompose(r, a, b, s)) for r in graphs]
        total *= len(opts)
        if max_size is not None and total > max_size:
            raise SpaceTooLarge(f"cover space exceeds {max_size}")
        if len(opts) == 1:
            fixed[(u, v)] = opts[0]
        else:
            slots.append((u, v))
            options.append(opts)
    return CoverSpace(g, h, fixed, slots, options, mode)


def enumerate_covers(g: MultiGraph, h: Sequence[int], mode: str = "gauge") -> Iterator[Cover]:
    """Stream the covers of :func:`cover_space` in canonical order."""
    yield from cover_space(g, h, mode)


# witness files ------------------------------------------------------------------
#
#   dpcover 1
#   graph <graph6 or sparse6>
#   lists <|L(0)|> <|L(1)|> ...
#   edge <u> <v> <word>          one line per edge, pairs in increasing order
#   # any comment
#
# ``word`` has one character per colour of ``L(u)``: the matched colour of
# ``L(v)`` in base 36, or ``-`` if unmatched.  Perfect matchings between equal
# lists are thus permutation words.

COVER_MAGIC = "dpcover 1"
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _word(m: Matching, a: int) -> str:
    out = ["-"] * a
    for i, j in m:
        out[i] = _DIGITS[j]
    return "".join(out)


def dump_cover(g: MultiGraph, c: Cover, comments: Iterable[str] = ()) -> str:
    lines = [COVER_MAGIC]
    lines += [f"# {text}" for text in comments]
    lines.append(f"graph {encode(g).decode()}")
    lines.append("lists " + " ".join(map(str, c.list_size)))
    for (u, v) in sorted(c.matchings):
        for m in c.matchings[(u, v)]:
            lines.append(f"edge {u} {v} {_word(m, c.list_size[u])}")
    return "\n".join(lines) + "\n"


def load_cover(text: str) -> tuple[MultiGraph, Cover]:
    """Parse :func:`dump_cover` output; raises :class:`CoverError` if malformed."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != COVER_MAGIC:
        raise CoverError("missing 'dpcover 1' header")
    g = sizes = None
    ms: dict[tuple[int, int], list[Matching]] = {}
    try:
        for ln in lines[1:]:
            key, *rest = ln.split()
            if key == "graph":
                g = decode(rest[0])
            elif key == "lists":
                sizes = tuple(int(x) for x in rest)
            elif key == "edge":
                u, v, word = int(rest[0]), int(rest[1]), rest[2] if len(rest) > 2 else ""
                if u > v:
                    raise CoverError("edge lines need u < v")
                m = frozenset((i, _DIGITS.index(ch)) for i, ch in enumerate(word) if ch != "-")
                ms.setdefault((u, v), []).append(m)
            else:
                raise CoverError(f"unknown line {ln!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CoverError):
            raise
        raise CoverError(f"malformed cover file: {exc}") from exc
    if g is None or sizes is None:
        raise CoverError("cover file needs 'graph' and 'lists' lines")
    c = Cover(sizes, {p: tuple(x) for p, x in sorted(ms.items())})
    bad = problems(g, c)
    if bad:
        raise CoverError("; ".join(bad))
    return g, c
