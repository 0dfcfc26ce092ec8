"""Johnson-graph spectra and the labeled/unlabeled intertwiner.

``B = m I + J(N, m)`` counts "remove one element, add one element" moves on
``m``-subsets of an ``N``-set.  Its eigenvalues are
``lambda_j = m + (m-j)(N-m-j) - j = (m-j)(N-m-j+1)`` for
``0 <= j <= min(m, N-m)``.

A spectrum certificate shows ``prod_j (B - lambda_j I) = 0`` exactly.  The
factors are distinct, so ``B`` is diagonalisable with spectrum inside
``{lambda_j}`` and the true multiplicities ``dim - rank_Q(B - lambda_j I)``
sum to ``dim``.  Ranks are computed modulo a prime, which can only
under-estimate the rational rank; if the modular multiplicities also sum to
``dim`` they are therefore all exact.  Otherwise the ranks are recomputed by
Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .catalog import Catalog, get_catalog, masks_with_popcount
from .graph import num_slots
from .linalg import bareiss_rank, exact_matmul, rank_mod_p
from .operators import Delta_or_zero, build_Delta

DEFAULT_BUDGET = 1000


class BudgetExceeded(ValueError):
    pass


def _check_budget(N: int, m: int, budget: int):
    if not 0 <= m <= N:
        raise ValueError(f"need 0 <= m <= N, got N={N}, m={m}")
    size = comb(N, m)
    if size > budget:
        raise BudgetExceeded(f"C({N},{m}) = {size} exceeds size budget {budget}")


class SubsetIndex:
    """Colex bijection between ``m``-subsets of ``range(N)`` (as bitmasks) and ``range(C(N, m))``.

    Colex order on ``m``-subsets is plain integer order on their bitmasks.
    """

    def __init__(self, N: int, m: int):
        if not 0 <= m <= N:
            raise ValueError(f"need 0 <= m <= N, got N={N}, m={m}")
        self.N = N
        self.m = m

    def __len__(self):
        return comb(self.N, self.m)

    def rank(self, mask: int) -> int:
        if mask.bit_count() != self.m or mask >> self.N:
            raise ValueError(f"{mask:#x} is not a {self.m}-subset of range({self.N})")
        r, i = 0, 0
        for e in range(self.N):
            if mask >> e & 1:
                i += 1
                r += comb(e, i)
        return r

    def unrank(self, r: int) -> int:
        if not 0 <= r < len(self):
            raise IndexError(r)
        mask = 0
        for i in range(self.m, 0, -1):
            e = i - 1
            while comb(e + 1, i) <= r:
                e += 1
            mask |= 1 << e
            r -= comb(e, i)
        return mask

    def masks(self) -> list[int]:
        return list(masks_with_popcount(self.N, self.m))


def build_johnson(N: int, m: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Adjacency matrix of J(N, m): adjacent iff the subsets share ``m - 1`` elements."""
    _check_budget(N, m, budget)
    masks = SubsetIndex(N, m).masks()
    pos = {x: i for i, x in enumerate(masks)}
    J = np.zeros((len(masks), len(masks)), dtype=np.int64)
    for a, x in enumerate(masks):
        ins = [1 << e for e in range(N) if x >> e & 1]
        outs = [1 << e for e in range(N) if not x >> e & 1]
        for u in ins:
            for w in outs:
                J[pos[x ^ u ^ w], a] = 1
    return J


def build_B(N: int, m: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    J = build_johnson(N, m, budget)
    return J + m * np.eye(J.shape[0], dtype=np.int64)


def predicted_eigenvalues(N: int, m: int) -> list[int]:
    return [m + (m - j) * (N - m - j) - j for j in range(min(m, N - m) + 1)]


@dataclass
class SpectrumCertificate:
    N: int
    m: int
    predicted: list[int]
    multiplicities: list[int]
    annihilated: bool
    rank_method: str

    @property
    def dim(self) -> int:
        return comb(self.N, self.m)

    @property
    def multiplicities_sum_ok(self) -> bool:
        return sum(self.multiplicities) == self.dim

    @property
    def trace_ok(self) -> bool:
        return sum(k * lam for k, lam in zip(self.multiplicities, self.predicted)) == self.m * self.dim

    @property
    def valid(self) -> bool:
        return self.annihilated and self.multiplicities_sum_ok and self.trace_ok

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "m": self.m,
            "dim": self.dim,
            "predicted": self.predicted,
            "multiplicities": self.multiplicities,
            "annihilated": self.annihilated,
            "multiplicities_sum_ok": self.multiplicities_sum_ok,
            "trace_ok": self.trace_ok,
            "rank_method": self.rank_method,
            "valid": self.valid,
        }


def annihilates(B: np.ndarray, roots: list[int]) -> bool:
    """Whether ``prod (B - r I)`` is exactly the zero matrix."""
    I = np.eye(B.shape[0], dtype=np.int64)
    acc = I
    for r in roots:
        acc = exact_matmul(acc, B - r * I)
        if not acc.any():
            return True
    return not acc.any()


def certify_spectrum(N: int, m: int, budget: int = DEFAULT_BUDGET,
                     rank_method: str = "auto") -> SpectrumCertificate:
    """``rank_method``: ``"bareiss"``, ``"modular"`` or ``"auto"`` (modular, Bareiss if uncertified)."""
    B = build_B(N, m, budget)
    lams = predicted_eigenvalues(N, m)
    annihilated = annihilates(B, lams)
    dim = B.shape[0]
    I = np.eye(dim, dtype=np.int64)

    def mults(rank):
        return [dim - rank(B - lam * I) for lam in lams]

    if rank_method in ("auto", "modular"):
        ks = mults(rank_mod_p)
        if rank_method == "modular" or (annihilated and sum(ks) == dim):
            return SpectrumCertificate(N, m, lams, ks, annihilated, "modular")
    elif rank_method != "bareiss":
        raise ValueError(f"unknown rank method {rank_method!r}")
    ks = mults(lambda a: bareiss_rank(a.tolist()))
    return SpectrumCertificate(N, m, lams, ks, annihilated, "bareiss")


class IntertwinerP:
    """0/1 incidence of labeled ``m``-edge graphs (columns) in their classes (rows)."""

    def __init__(self, n: int, m: int, budget: int = DEFAULT_BUDGET):
        N = num_slots(n)
        _check_budget(N, m, budget)
        self.n = n
        self.m = m
        self.rows: Catalog = get_catalog(n, m)
        self.cols = SubsetIndex(N, m)
        self.row_of = [self.rows.index_of_bits(x) for x in self.cols.masks()]

    def matrix(self) -> np.ndarray:
        P = np.zeros((len(self.rows), len(self.cols)), dtype=np.int64)
        P[self.row_of, np.arange(len(self.cols))] = 1
        return P

    def full_row_rank(self) -> bool:
        # rows have disjoint supports, so full row rank iff no row is empty
        return set(self.row_of) == set(range(len(self.rows)))


def build_P(n: int, m: int, budget: int = DEFAULT_BUDGET) -> IntertwinerP:
    return IntertwinerP(n, m, budget)


@dataclass
class IntertwiningReport:
    n: int
    m: int
    holds: bool
    full_row_rank: bool
    one_per_column: bool
    shape: tuple[int, int]

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "holds": self.holds,
                "full_row_rank": self.full_row_rank, "one_per_column": self.one_per_column,
                "P_shape": list(self.shape)}


def check_intertwining(n: int, m: int, budget: int = DEFAULT_BUDGET) -> IntertwiningReport:
    """Exact test of ``Delta_1 P = P B`` with ``B`` over the edge slots."""
    ip = build_P(n, m, budget)
    P = ip.matrix()
    A = np.array(Delta_or_zero(n, m, 1).to_dense(), dtype=np.int64).reshape(len(ip.rows), -1)
    B = build_B(num_slots(n), m, budget)
    holds = np.array_equal(exact_matmul(A, P), exact_matmul(P, B))
    return IntertwiningReport(n, m, bool(holds), ip.full_row_rank(),
                              bool((P.sum(axis=0) == 1).all()), P.shape)


def shift(N: int, m: int, r: int) -> int:
    """The coefficient ``(r-1)(2m-r-N)`` multiplying ``Delta_0``."""
    return (r - 1) * (2 * m - r - N)


@dataclass
class InvertibilityCertificate:
    n: int
    m: int
    r: int
    shift: int
    predicted_eigenvalues: list[int]
    invertible: bool
    zero_witness: int | None
    case_analysis_ok: bool
    matrix_nonsingular: bool | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "r": self.r, "N": num_slots(self.n),
            "shift": self.shift,
            "predicted_eigenvalues": self.predicted_eigenvalues,
            "invertible": self.invertible,
            "zero_witness": self.zero_witness,
            "case_analysis_ok": self.case_analysis_ok,
            "matrix_nonsingular": self.matrix_nonsingular,
        }


def step_matrix(n: int, m: int, r: int):
    """``(r-1)(2m-r-N) Delta_0 + Delta_1`` on ``U(n, m)``."""
    return shift(num_slots(n), m, r) * build_Delta(n, m, 0) + Delta_or_zero(n, m, 1)


def invertibility_certificate(n: int, m: int, r: int,
                              check_matrix: bool = False) -> InvertibilityCertificate:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    N = num_slots(n)
    if not 0 <= m <= N:
        raise ValueError(f"m must be in 0..{N}, got {m}")
    c = shift(N, m, r)
    lams = predicted_eigenvalues(N, m)
    mus = [(m - j) * (N - m - j + 1) + c for j in range(len(lams))]
    if any(mu != lam + c for mu, lam in zip(mus, lams)):
        raise AssertionError("closed forms for lambda_j and mu_j disagree")
    zero = next((j for j, mu in enumerate(mus) if mu == 0), None)
    # a zero mu_j forces c <= 0, i.e. r = 1 or 2m <= N + r
    case_ok = zero is None or (c <= 0 and (r == 1 or 2 * m <= N + r))
    nonsingular = None
    if check_matrix:
        M = step_matrix(n, m, r)
        nonsingular = bareiss_rank(M.to_dense()) == len(M.rows)
    return InvertibilityCertificate(n, m, r, c, mus, zero is None, zero, case_ok, nonsingular)


@dataclass
class KernelTransferReport:
    n: int
    m: int
    r: int
    invertible: bool
    pairs_in_kernel: int
    failures: list[tuple[int, int]]

    @property
    def holds(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "r": self.r, "invertible": self.invertible,
                "pairs_in_kernel": self.pairs_in_kernel,
                "failures": [list(p) for p in self.failures], "holds": self.holds}


def kernel_transfer(n: int, m: int, r: int) -> KernelTransferReport:
    """For ``X = X_G - X_H`` with ``Delta_r X = 0``: ``Delta_{r-1} X = 0`` when invertible.

    Only meaningful for ``r >= 2``; ``r = 1`` reduces to ``Delta_0 X = X``.
    """
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got r={r}, m={m}")
    cert = invertibility_certificate(n, m, r)
    cat = get_catalog(n, m)
    Dr, Dr1 = build_Delta(n, m, r), build_Delta(n, m, r - 1)
    cols = [tuple(Dr.column(c)) for c in range(len(cat))]
    prev = [tuple(Dr1.column(c)) for c in range(len(cat))]
    in_kernel, failures = 0, []
    for a in range(len(cat)):
        for b in range(a + 1, len(cat)):
            if cols[a] == cols[b]:
                in_kernel += 1
                if cert.invertible and prev[a] != prev[b]:
                    failures.append((a, b))
    return KernelTransferReport(n, m, r, cert.invertible, in_kernel, failures)


def labeled_class_sizes(n: int, m: int) -> list[int]:
    """Number of labeled graphs in each class of ``U(n, m)`` (row sums of P)."""
    cat = get_catalog(n, m)
    sizes = [0] * len(cat)
    for x in SubsetIndex(num_slots(n), m).masks():
        sizes[cat.index_of_bits(x)] += 1
    return sizes
