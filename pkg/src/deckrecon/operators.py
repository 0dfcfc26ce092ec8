"""Deck operators ``d_k``, ``D_i`` and ``Delta_i`` as exact integer matrices.

Columns are indexed by the catalog of the source graphs and rows by the
catalog of the results.  Matrices act on column vectors, so in ``M1 @ M2``
the right factor is applied first.
"""

from __future__ import annotations

import json
from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping

from .catalog import Catalog, DeckVector, get_catalog
from .graph import num_slots

KINDS = ("d", "D", "Delta", "identity", "custom")


class OperatorError(ValueError):
    pass


class OperatorMatrix:
    """Sparse integer matrix between two catalogs."""

    __slots__ = ("rows", "cols", "entries", "kind", "order")

    def __init__(self, rows: Catalog, cols: Catalog, entries: Mapping[tuple[int, int], int],
                 kind: str = "custom", order: int | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown operator kind {kind!r}")
        self.rows = rows
        self.cols = cols
        self.entries = {rc: int(v) for rc, v in entries.items() if v}
        self.kind = kind
        self.order = order
        for r, c in self.entries:
            if not (0 <= r < len(rows) and 0 <= c < len(cols)):
                raise OperatorError(f"entry ({r}, {c}) outside {self.shape}")
        if kind in ("d", "D", "Delta") and any(v < 0 for v in self.entries.values()):
            raise OperatorError(f"negative entry in a {kind} matrix")

    @classmethod
    def identity(cls, cat: Catalog) -> OperatorMatrix:
        return cls(cat, cat, {(i, i): 1 for i in range(len(cat))}, "identity", 0)

    @classmethod
    def zero(cls, rows: Catalog, cols: Catalog) -> OperatorMatrix:
        return cls(rows, cols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.entries.get(rc, 0)

    def column(self, c: int) -> list[int]:
        col = [0] * len(self.rows)
        for (r, cc), v in self.entries.items():
            if cc == c:
                col[r] = v
        return col

    def column_sums(self) -> list[int]:
        sums = [0] * len(self.cols)
        for (_, c), v in self.entries.items():
            sums[c] += v
        return sums

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.cols) for _ in self.rows.codes]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def _compatible(self, other: OperatorMatrix):
        if self.rows != other.rows or self.cols != other.cols:
            raise OperatorError("operator catalogs differ")

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._compatible(other)
        out = dict(self.entries)
        for rc, v in other.entries.items():
            out[rc] = out.get(rc, 0) + v
        return OperatorMatrix(self.rows, self.cols, out)

    def __neg__(self) -> OperatorMatrix:
        return OperatorMatrix(self.rows, self.cols, {rc: -v for rc, v in self.entries.items()})

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return self + (-other)

    def __mul__(self, k: int) -> OperatorMatrix:
        return OperatorMatrix(self.rows, self.cols, {rc: k * v for rc, v in self.entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, DeckVector):
            return apply(self, other)
        if self.cols != other.rows:
            raise OperatorError(f"cannot compose {self!r} after {other!r}")
        by_row = defaultdict(list)
        for (k, c), v in other.entries.items():
            by_row[k].append((c, v))
        out = defaultdict(int)
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out[r, c] += a * b
        return OperatorMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return (f"OperatorMatrix({self.kind}{'' if self.order is None else self.order}, "
                f"n={self.cols.n}, {self.rows.m}<-{self.cols.m}, shape={self.shape})")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "n": self.cols.n,
            "m": self.cols.m,
            "rows_hash": self.rows.digest(),
            "cols_hash": self.cols.digest(),
            "triplets": [[r, c, v] for (c, r), v in
                         sorted(((c, r), v) for (r, c), v in self.entries.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=None, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, rows_m: int | None = None) -> OperatorMatrix:
        """Rebuild from :meth:`to_json`; catalogs are re-enumerated and hash-checked."""
        n, m, kind, order = data["n"], data["m"], data["kind"], data["order"]
        if rows_m is None:
            rows_m = m - order if kind == "d" else m
        rows, cols = get_catalog(n, rows_m), get_catalog(n, m)
        if rows.digest() != data["rows_hash"] or cols.digest() != data["cols_hash"]:
            raise OperatorError("catalog hash mismatch")
        return cls(rows, cols, {(r, c): v for r, c, v in data["triplets"]}, kind, order)


def _check_column_sums(M: OperatorMatrix, expected: int):
    bad = [(c, s) for c, s in enumerate(M.column_sums()) if s != expected]
    if bad:
        c, s = bad[0]
        raise OperatorError(f"{M!r}: column {c} sums to {s}, expected {expected}")


def _edge_bits(bits: int, N: int) -> list[int]:
    return [1 << s for s in range(N) if bits >> s & 1]


@lru_cache(maxsize=None)
def build_d(n: int, m: int, k: int) -> OperatorMatrix:
    """k-edge deck operator ``U(n, m) -> U(n, m-k)``."""
    N = num_slots(n)
    if not (0 <= m <= N and 0 <= k <= m):
        raise ValueError(f"build_d needs 0 <= k <= m <= {N}, got m={m}, k={k}")
    cols = get_catalog(n, m)
    rows = get_catalog(n, m - k)
    entries = defaultdict(int)
    for c, g in enumerate(cols.codes):
        for A in combinations(_edge_bits(g, N), k):
            f = g ^ sum(A)
            entries[rows.index_of_bits(f), c] += 1
    M = OperatorMatrix(rows, cols, entries, "d", k)
    _check_column_sums(M, comb(m, k))
    return M


@lru_cache(maxsize=None)
def build_D(n: int, m: int, i: int) -> OperatorMatrix:
    """Disjoint modified deck: remove ``i`` edges, add ``i`` edges absent from G."""
    N = num_slots(n)
    if not (0 <= m <= N and 0 <= i <= min(m, N - m)):
        raise ValueError(f"build_D needs 0 <= i <= min(m, N-m), got m={m}, i={i}, N={N}")
    cat = get_catalog(n, m)
    full = (1 << N) - 1
    entries = defaultdict(int)
    for c, g in enumerate(cat.codes):
        holes = _edge_bits(g ^ full, N)
        adds = [sum(B) for B in combinations(holes, i)]
        for A in combinations(_edge_bits(g, N), i):
            f = g ^ sum(A)
            for b in adds:
                entries[cat.index_of_bits(f | b), c] += 1
    M = OperatorMatrix(cat, cat, entries, "D", i)
    _check_column_sums(M, comb(m, i) * comb(N - m, i))
    return M


@lru_cache(maxsize=None)
def build_Delta(n: int, m: int, i: int) -> OperatorMatrix:
    """Modified deck: remove ``i`` edges, then add ``i`` non-edges of what is left."""
    N = num_slots(n)
    if not (0 <= m <= N and 0 <= i <= m):
        raise ValueError(f"build_Delta needs 0 <= i <= m <= {N}, got m={m}, i={i}")
    cat = get_catalog(n, m)
    full = (1 << N) - 1
    entries = defaultdict(int)
    for c, g in enumerate(cat.codes):
        for A in combinations(_edge_bits(g, N), i):
            f = g ^ sum(A)
            for B in combinations(_edge_bits(f ^ full, N), i):
                entries[cat.index_of_bits(f | sum(B)), c] += 1
    M = OperatorMatrix(cat, cat, entries, "Delta", i)
    _check_column_sums(M, comb(m, i) * comb(N - m + i, i))
    return M


def D_or_zero(n: int, m: int, i: int) -> OperatorMatrix:
    """``build_D``, or the zero matrix when no (removal, addition) pair exists."""
    if 0 <= i <= min(m, num_slots(n) - m):
        return build_D(n, m, i)
    cat = get_catalog(n, m)
    return OperatorMatrix.zero(cat, cat)


def Delta_or_zero(n: int, m: int, i: int) -> OperatorMatrix:
    if 0 <= i <= m:
        return build_Delta(n, m, i)
    cat = get_catalog(n, m)
    return OperatorMatrix.zero(cat, cat)


def apply(M: OperatorMatrix, v: DeckVector) -> DeckVector:
    if v.catalog != M.cols:
        raise OperatorError(f"vector over {v.catalog!r} does not match columns of {M!r}")
    out = [0] * len(M.rows)
    for (r, c), a in M.entries.items():
        x = v.counts[c]
        if x:
            out[r] += a * x
    return DeckVector(M.rows, out)


def deck_of_collection(P: DeckVector, k: int) -> DeckVector:
    """Multiunion of the k-edge decks of the graphs in ``P``."""
    if P.signed:
        raise ValueError("deck_of_collection takes a collection, not a signed vector")
    return apply(build_d(P.catalog.n, P.catalog.m, k), P)


def modified_deck(P: DeckVector, k: int, disjoint: bool = False) -> DeckVector:
    build = build_D if disjoint else build_Delta
    return apply(build(P.catalog.n, P.catalog.m, k), P)
