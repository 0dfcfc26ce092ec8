"""Exact integer linear algebra.

Dense matrices are lists of lists of Python ints or integer numpy arrays.
Nothing here goes through floating point except :func:`exact_matmul`, which
uses float64 BLAS only when every partial sum provably stays below 2**53.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

MERSENNE_31 = (1 << 31) - 1


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in r] for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        prow = a[rank]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = p * row[j] // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    a = [[int(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    return sign * a[n - 1][n - 1]


def rank_mod_p(a, p: int = MERSENNE_31) -> int:
    """Rank over GF(p).  Never exceeds the rank over Q."""
    a = np.asarray(a)
    if a.dtype.kind in "iu":
        m = np.mod(a.astype(np.int64), p)
    else:
        m = (np.array(a, dtype=object) % p).astype(np.int64)
    nrows, ncols = m.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank, c:] = m[rank, c:] * inv % p
        below = m[rank + 1:, c].copy()
        hit = np.flatnonzero(below)
        if hit.size:
            rows = rank + 1 + hit
            m[rows, c:] = (m[rows, c:] - np.outer(below[hit], m[rank, c:]) % p) % p
        rank += 1
    return rank


def inf_norm(a) -> int:
    """Maximum absolute row sum, as an exact int."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.dtype == object:
        return int(max(sum(abs(int(x)) for x in row) for row in a))
    # int64 row sums could wrap; object sums are exact
    return int(np.abs(a).astype(object).sum(axis=1).max())


def exact_matmul(a, b):
    """Exact integer product of integer arrays.

    Picks float64 BLAS, int64, or object arithmetic from the bound
    ``|partial sums| <= ||a||_inf * max|b|``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    bound = inf_norm(a) * (int(np.max(np.abs(b))) if b.size else 0)
    if bound < 2 ** 53:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(out).astype(np.int64)
    if bound < 2 ** 63:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]):
    """One solution ``x`` of ``a x = b`` over Q, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [[Fraction(x) for x in a[r]] + [Fraction(b[r])] for r in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if any(aug[i][ncols] for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x
