"""Canonical labeling of small graphs.

The canonical code of a graph is the smallest edge bitset, read as an
integer, over all ``n!`` relabelings.  Under colex slot order the most
significant bits are the adjacency row of the vertex in the highest position,
then the next row down, and so on.  The search fills positions from the top:

* the vertex at the top position of the current top cell must minimise its
  row, and doing so forces its neighbours to the bottom of every remaining
  cell, which splits the cells;
* candidates with equal rows are branched on, except that interchangeable
  twins (``N(u) - w == N(w) - u``) are only explored once;
* a branch is dropped as soon as its determined high rows exceed the best
  leaf found so far.

Every step is forced by the lexicographic order itself, so the result equals
the exhaustive minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, adjacency_masks

MAX_VERTICES = 8

_ROW_BASE = [p * (p - 1) // 2 for p in range(MAX_VERTICES + 2)]


@dataclass(frozen=True, slots=True, order=True)
class CanonicalCode:
    n: int
    code: int

    def graph(self) -> Graph:
        return Graph(self.n, self.code)


def canonical_form(g: Graph) -> CanonicalCode:
    return CanonicalCode(g.n, canonical_code(g.n, g.bits))


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``g``."""
    return Graph(g.n, canonical_code(g.n, g.bits))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_code(g.n, g.bits) == canonical_code(h.n, h.bits)


@lru_cache(maxsize=1 << 22)
def canonical_code(n: int, bits: int) -> int:
    if n > MAX_VERTICES:
        raise ValueError(f"canonical labeling supports n <= {MAX_VERTICES}, got n={n}")
    if n <= 1:
        return bits
    adj = adjacency_masks(n, bits)
    best = None

    def search(cells, p, partial):
        nonlocal best
        if p < 0:
            if best is None or partial < best:
                best = partial
            return
        if best is not None:
            hi = _ROW_BASE[p + 1]
            if partial >> hi > best >> hi:
                return
        top = cells[-1]
        below = cells[:-1]
        options = []
        for v in top:
            av = adj[v]
            rest = [w for w in top if w != v]
            groups = below + [rest] if rest else below
            row = 0
            offset = 0
            split = []
            for c in groups:
                nb = [w for w in c if av >> w & 1]
                k = len(nb)
                if k:
                    row |= ((1 << k) - 1) << offset
                    split.append(nb)
                if k < len(c):
                    split.append([w for w in c if not av >> w & 1])
                offset += len(c)
            options.append((row, v, split))
        low = min(o[0] for o in options)
        tried = []
        for row, v, split in options:
            if row != low:
                continue
            if any(_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            search(split, p - 1, partial | row << _ROW_BASE[p])

    degs = [a.bit_count() for a in adj]
    # one cell holding everything; degree order inside a cell is irrelevant
    search([sorted(range(n), key=degs.__getitem__)], n - 1, 0)
    return best


def _twins(adj, u, w):
    return adj[u] & ~(1 << w) == adj[w] & ~(1 << u)
