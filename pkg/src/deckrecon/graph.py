"""Labeled simple graphs stored as edge-slot bitsets.

Vertex pairs ``{u, v}`` with ``u < v`` are numbered in colexicographic order,
``slot(u, v) = C(v, 2) + u``.  The numbering does not depend on ``n``, so a
graph on ``n`` vertices uses slots ``0 .. C(n, 2) - 1`` and the bitset of a
graph is simply an ``int``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt
from typing import Iterable, Sequence


def num_slots(n: int) -> int:
    return n * (n - 1) // 2


def slot(u: int, v: int) -> int:
    """Index of the unordered pair ``{u, v}``."""
    if u == v:
        raise ValueError(f"no slot for loop ({u}, {v})")
    if u > v:
        u, v = v, u
    if u < 0:
        raise ValueError(f"negative vertex in ({u}, {v})")
    return v * (v - 1) // 2 + u


def slot_pair(s: int) -> tuple[int, int]:
    """Inverse of :func:`slot`."""
    if s < 0:
        raise ValueError(f"negative slot {s}")
    v = (1 + isqrt(1 + 8 * s)) // 2
    # isqrt can land one too high on exact boundaries
    while comb(v, 2) > s:
        v -= 1
    return s - comb(v, 2), v


def _mask(slots: Iterable[int]) -> int:
    m = 0
    for s in slots:
        m |= 1 << s
    return m


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        if self.bits < 0 or self.bits >> num_slots(self.n):
            raise ValueError(f"bitset {self.bits:#x} has slots outside n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        bits = 0
        for u, v in edges:
            if max(u, v) >= n:
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            bits |= 1 << slot(u, v)
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, (1 << num_slots(n)) - 1)

    @property
    def N(self) -> int:
        return num_slots(self.n)

    @property
    def edge_count(self) -> int:
        return self.bits.bit_count()

    def edge_slots(self) -> list[int]:
        return [s for s in range(self.N) if self.bits >> s & 1]

    def non_edge_slots(self) -> list[int]:
        return [s for s in range(self.N) if not self.bits >> s & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [slot_pair(s) for s in self.edge_slots()]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bits >> slot(u, v) & 1)

    def adjacency(self) -> list[int]:
        """Neighbour bitmask of every vertex."""
        return adjacency_masks(self.n, self.bits)

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency()]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError(f"{perm!r} is not a permutation of range({self.n})")
        return Graph(self.n, relabel_bits(self.bits, perm))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def adjacency_masks(n: int, bits: int) -> list[int]:
    adj = [0] * n
    v, base = 1, 0
    while v < n:
        row = bits >> base & ((1 << v) - 1)
        for u in range(v):
            if row >> u & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        base += v
        v += 1
    return adj


def relabel_bits(bits: int, perm: Sequence[int]) -> int:
    out = 0
    s = 0
    v = 1
    while bits >> s:
        for u in range(v):
            if bits >> s & 1:
                out |= 1 << slot(perm[u], perm[v])
            s += 1
        v += 1
    return out


def remove_edges(g: Graph, slots: Iterable[int]) -> Graph:
    """``G - A``.  Every slot of ``A`` must be an edge of ``G``."""
    a = _mask(slots)
    if a & ~g.bits:
        missing = [s for s in range(a.bit_length()) if a >> s & 1 and not g.bits >> s & 1]
        raise ValueError(f"cannot remove non-edges {[slot_pair(s) for s in missing]}")
    return Graph(g.n, g.bits & ~a)


def add_edges(f: Graph, slots: Iterable[int]) -> Graph:
    """``F + B``.  No slot of ``B`` may already be an edge of ``F``."""
    b = _mask(slots)
    if b >> f.N:
        raise ValueError(f"slots outside n={f.n}")
    if b & f.bits:
        clash = [s for s in range(b.bit_length()) if b >> s & 1 and f.bits >> s & 1]
        raise ValueError(f"edges {[slot_pair(s) for s in clash]} already present")
    return Graph(f.n, f.bits | b)


def complement(g: Graph) -> Graph:
    return Graph(g.n, g.bits ^ ((1 << g.N) - 1))
