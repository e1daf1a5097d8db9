"""graph6 / sparse6 reading and graph6 writing (McKay's formats).

Only simple graphs are accepted; sparse6 loops or repeated edges are rejected.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import MAX_N, Graph

GRAPH6_HEADER = ">>graph6<<"
SPARSE6_HEADER = ">>sparse6<<"


class GraphFormatError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        where = f" at byte offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")


def _sixes(text: str, start: int, base: int) -> list[int]:
    values = []
    for pos in range(start, len(text)):
        code = ord(text[pos])
        if not 63 <= code <= 126:
            raise GraphFormatError(f"illegal byte 0x{code:02X}", base + pos)
        values.append(code - 63)
    return values


def _decode_n(vals: list[int], base: int) -> tuple[int, int]:
    """Decode the size prefix; returns ``(n, bytes consumed)``."""
    if not vals:
        raise GraphFormatError("missing vertex count", base)
    if vals[0] != 63:
        return vals[0], 1
    if len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphFormatError("truncated 8-byte vertex count", base)
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        if n < 258048:
            raise GraphFormatError(f"non-canonical 8-byte vertex count {n}", base)
        return n, 8
    if len(vals) < 4:
        raise GraphFormatError("truncated 4-byte vertex count", base)
    n = 0
    for v in vals[1:4]:
        n = (n << 6) | v
    if n < 63:
        raise GraphFormatError(f"non-canonical 4-byte vertex count {n}", base)
    return n, 4


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _strip(text: str, header: str) -> tuple[str, int]:
    line = text.rstrip("\r\n")
    if line.startswith(header):
        return line[len(header):], len(header)
    return line, 0


def parse_graph6(text: str, max_n: int = MAX_N) -> Graph:
    line, base = _strip(text, GRAPH6_HEADER)
    vals = _sixes(line, 0, base)
    n, used = _decode_n(vals, base)
    if n > max_n:
        raise GraphFormatError(f"graph has {n} vertices, limit is {max_n}", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[used:]
    if len(body) != need:
        raise GraphFormatError(
            f"expected {need} adjacency bytes for n={n}, found {len(body)}",
            base + used + min(len(body), need),
        )
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if (body[bit // 6] >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    if need and body[-1] & ((1 << (6 * need - nbits)) - 1):
        raise GraphFormatError("nonzero padding bits", base + used + need - 1)
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for pos in range(0, len(bits), 6):
        value = 0
        for b in bits[pos:pos + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return _encode_n(g.n) + "".join(chars)


def parse_sparse6(text: str, max_n: int = MAX_N) -> Graph:
    line, base = _strip(text, SPARSE6_HEADER)
    if not line.startswith(":"):
        raise GraphFormatError("sparse6 line must start with ':'", base)
    vals = _sixes(line, 1, base)
    n, used = _decode_n(vals, base + 1)
    if n > max_n:
        raise GraphFormatError(f"graph has {n} vertices, limit is {max_n}", base + 1)
    k = max(1, (n - 1).bit_length())
    bits = [(v >> s) & 1 for v in vals[used:] for s in range(5, -1, -1)]
    edges: set[tuple[int, int]] = set()
    v = 0
    pos = 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for t in bits[pos + 1:pos + 1 + k]:
            x = (x << 1) | t
        offset = base + 1 + used + pos // 6
        pos += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
            continue
        if x == v:
            raise GraphFormatError(f"loop at vertex {v} (simple graphs only)", offset)
        if (x, v) in edges:
            raise GraphFormatError(f"repeated edge ({x},{v}) (simple graphs only)", offset)
        edges.add((x, v))
    return Graph(n, sorted(edges))


def parse_line(text: str, max_n: int = MAX_N) -> Graph:
    """Parse one graph6 or sparse6 line, dispatching on the leading ':'."""
    stripped = text.strip()
    if stripped.startswith(":") or stripped.startswith(SPARSE6_HEADER):
        return parse_sparse6(stripped, max_n)
    return parse_graph6(stripped, max_n)


def iter_graph_file(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield ``(line number, raw line)`` for every non-blank line (1-based)."""
    with open(path, encoding="ascii", errors="surrogateescape") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if line:
                yield lineno, line
