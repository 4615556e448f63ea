"""graph6 / sparse6 encoders and decoders (McKay's formats).

graph6 carries simple graphs only.  sparse6 carries multiplicities, which is
how multigraphs travel through files here.  Both are newline-delimited; a
``>>graph6<<`` / ``>>sparse6<<`` header is accepted and skipped.
"""

from __future__ import annotations

import gzip
import io
from pathlib import Path
from typing import IO, Iterable, Iterator

from .multigraph import GraphError, MultiGraph

MAX_N = 258047  # 4-byte N(n) form is enough for every graph we handle


class FormatError(GraphError):
    pass


# N(n) -----------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 0 or n > 68719476735:
        raise FormatError(f"vertex count {n} out of range")
    if n <= 62:
        return bytes([n + 63])
    if n <= MAX_N:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [((n >> (6 * k)) & 63) + 63 for k in range(5, -1, -1)])


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise FormatError("empty input")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated vertex count")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, data[8:]
    if len(data) < 4:
        raise FormatError("truncated vertex count")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, data[4:]


def _check_chars(data: bytes):
    if any(b < 63 or b > 126 for b in data):
        raise FormatError("byte outside the printable range 63..126")


# graph6 -----------------------------------------------------------------------

def to_graph6(g: MultiGraph, header: bool = False) -> bytes:
    if not g.is_simple:
        raise FormatError("graph6 cannot represent parallel edges; use sparse6")
    bits = [g.mult[i][j] for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6))
    return (b">>graph6<<" if header else b"") + _encode_n(g.n) + body


def from_graph6(line: bytes | str) -> MultiGraph:
    data = line.encode() if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    _check_chars(data)
    n, rest = _decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise FormatError(f"graph6 body has {len(rest)} bytes, expected {need} for n={n}")
    bits = []
    for b in rest:
        v = b - 63
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[k:]):
        raise FormatError("nonzero padding bits")
    return MultiGraph.from_edges(n, edges)


# sparse6 ------------------------------------------------------------------------

def to_sparse6(g: MultiGraph, header: bool = False) -> bytes:
    n = g.n
    k = max(1, (n - 1).bit_length())
    # edges (u, v) with u <= v sorted by v, then u
    edges = sorted(((u, v) for u, v in g.edges()), key=lambda e: (e[1], e[0]))
    bits: list[int] = []

    def put(x: int):
        bits.extend((x >> i) & 1 for i in range(k - 1, -1, -1))

    cur = 0
    for u, v in edges:
        if v == cur:
            bits.append(0)
            put(u)
        elif v == cur + 1:
            cur = v
            bits.append(1)
            put(u)
        else:
            cur = v
            bits.append(1)
            put(v)
            bits.append(0)
            put(u)
    pad = -len(bits) % 6
    if k < 6 and n == (1 << k) and pad >= k and cur < n - 1:
        bits.append(0)
        pad -= 1
    bits.extend([1] * pad)
    body = bytes(63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6))
    return (b">>sparse6<<" if header else b"") + b":" + _encode_n(n) + body


def from_sparse6(line: bytes | str) -> MultiGraph:
    data = line.encode() if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>sparse6<<"):
        data = data[11:]
    if not data.startswith(b":"):
        raise FormatError("sparse6 must start with ':'")
    data = data[1:]
    _check_chars(data)
    n, rest = _decode_n(data)
    k = max(1, (n - 1).bit_length())
    bits = []
    for b in rest:
        v = b - 63
        bits.extend((v >> i) & 1 for i in range(5, -1, -1))
    edges = []
    pos, cur = 0, 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for i in range(k):
            x = (x << 1) | bits[pos + 1 + i]
        pos += 1 + k
        if b:
            cur += 1
        if x > cur:
            cur = x
        elif cur < n:
            if x >= n:
                raise FormatError(f"vertex {x} out of range")
            if x == cur:
                raise GraphError(f"loop at vertex {x}")
            edges.append((x, cur))
        if cur >= n:
            break
    return MultiGraph.from_edges(n, edges)


# dispatch and streams -------------------------------------------------------

def encode(g: MultiGraph) -> bytes:
    """graph6 for simple graphs, sparse6 otherwise."""
    return to_graph6(g) if g.is_simple else to_sparse6(g)


def decode(line: bytes | str) -> MultiGraph:
    data = line.encode() if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>sparse6<<") or data.startswith(b":"):
        return from_sparse6(data)
    return from_graph6(data)


def read_graphs(source: str | Path | IO[bytes]) -> Iterator[MultiGraph]:
    """Yield graphs from a newline-delimited graph6/sparse6 file (gzip ok)."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        raw = path.read_bytes()
        if raw[:2] == b"\x1f\x8b":
            raw = gzip.decompress(raw)
        stream: IO[bytes] = io.BytesIO(raw)
    else:
        stream = source
    for line in stream:
        if isinstance(line, str):
            line = line.encode()
        line = line.strip()
        if not line or line.startswith(b"#"):
            continue
        yield decode(line)


def write_graphs(path: str | Path, graphs: Iterable[MultiGraph]):
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "wb") as fh:
        for g in graphs:
            fh.write(encode(g) + b"\n")
