"""graph6 encoding (header-less variant, one graph per line).

graph6 lists the upper triangle column by column, ``x(0,1), x(0,2), x(1,2),
x(0,3), ...``, which is exactly colex slot order, so the payload is the edge
bitset chopped into big-endian 6-bit groups.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph, num_slots


class Graph6Error(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"n={n} too large for graph6")


def encode(g: Graph) -> str:
    N = num_slots(g.n)
    out = [_encode_n(g.n)]
    for start in range(0, N, 6):
        chunk = 0
        for b in range(6):
            s = start + b
            if s < N and g.bits >> s & 1:
                chunk |= 1 << (5 - b)
        out.append(chr(63 + chunk))
    return "".join(out)


def _sextet(text: str, i: int) -> int:
    c = ord(text[i])
    if not 63 <= c <= 126:
        raise Graph6Error(f"invalid graph6 character {text[i]!r}", i)
    return c - 63


def decode(text: str) -> Graph:
    text = text.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty graph6 string", 0)
    if text[0] != "~":
        n, pos = _sextet(text, 0), 1
    else:
        width = 6 if len(text) > 1 and text[1] == "~" else 3
        pos = 1 + (width == 6)
        if len(text) < pos + width:
            raise Graph6Error("truncated vertex count", len(text))
        n = 0
        for i in range(pos, pos + width):
            n = n << 6 | _sextet(text, i)
        pos += width
    if n < 1:
        raise Graph6Error("graph6 graph has no vertices", 0)
    N = num_slots(n)
    body = text[pos:]
    need = -(-N // 6)
    for i in range(len(body)):
        _sextet(text, pos + i)
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}",
                          pos + min(len(body), need))
    bits = 0
    for i, ch in enumerate(body):
        x = ord(ch) - 63
        for b in range(6):
            if x >> (5 - b) & 1:
                s = 6 * i + b
                if s >= N:
                    raise Graph6Error("nonzero padding bit", pos + i)
                bits |= 1 << s
    return Graph(n, bits)


def read_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield decode(line)


def write_lines(graphs: Iterable[Graph]) -> str:
    return "".join(encode(g) + "\n" for g in graphs)
