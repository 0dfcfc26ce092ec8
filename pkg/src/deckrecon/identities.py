"""Exact checks of the deck-operator identities.

* ``DelD``:      Delta_s = sum_{i<=s} C(m-i, s-i) D_i
* ``Recursion``: D_1 D_i = (m-i+1)(N-m-i+1) D_{i-1} + i(N-2i) D_i + (i+1)^2 D_{i+1}
* ``DelDel``:    (i+1)^2 Delta_{i+1} = (i(2m-N-i-1) Delta_0 + Delta_1) Delta_i
* ``Corollary``: Delta_k X = 0 implies Delta_i X = 0 for every i >= k

``D_i`` outside ``0 <= i <= min(m, N-m)`` is the zero matrix.  A failed
identity is returned as a report, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .catalog import DeckVector, get_catalog
from .graph import num_slots
from .operators import D_or_zero, OperatorMatrix, apply, build_Delta

IDENTITIES = ("DelD", "Recursion", "DelDel", "Corollary")


@dataclass
class IdentityReport:
    identity: str
    params: tuple[int, int, int]
    holds: bool
    max_abs_discrepancy: int
    witness: tuple[int, int, int, int] | None = None
    diff: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        assert self.holds == (self.max_abs_discrepancy == 0)
        assert (self.witness is None) == self.holds

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "params": dict(zip(("n", "m", "i"), self.params)),
            "holds": self.holds,
            "max_abs_discrepancy": self.max_abs_discrepancy,
            "witness": None if self.witness is None else dict(
                zip(("row", "col", "lhs", "rhs"), self.witness)),
        }
        if self.diff is not None:
            out["diff"] = [[r, c, lhs, rhs] for (r, c), (lhs, rhs) in sorted(self.diff.items())]
        return out


def compare(name: str, params, lhs: OperatorMatrix, rhs: OperatorMatrix,
            full_diff: bool = False) -> IdentityReport:
    worst, witness, diff = 0, None, {}
    for rc in sorted(set(lhs.entries) | set(rhs.entries)):
        a, b = lhs[rc], rhs[rc]
        if a != b:
            diff[rc] = (a, b)
            if abs(a - b) > worst:
                worst = abs(a - b)
                witness = (rc[0], rc[1], a, b)
    return IdentityReport(name, tuple(params), worst == 0, worst, witness,
                          diff if full_diff else None)


def check_DelD(n: int, m: int, s: int, full_diff: bool = False) -> IdentityReport:
    if not 0 <= s <= m:
        raise ValueError(f"DelD needs 0 <= s <= m, got s={s}, m={m}")
    lhs = build_Delta(n, m, s)
    cat = lhs.cols
    rhs = OperatorMatrix.zero(cat, cat)
    for i in range(s + 1):
        rhs = rhs + comb(m - i, s - i) * D_or_zero(n, m, i)
    return compare("DelD", (n, m, s), lhs, rhs, full_diff)


def check_recursion(n: int, m: int, i: int, full_diff: bool = False) -> IdentityReport:
    N = num_slots(n)
    if not 0 <= i <= min(m, N - m):
        raise ValueError(f"Recursion needs 0 <= i <= min(m, N-m), got i={i}, m={m}, N={N}")
    lhs = D_or_zero(n, m, 1) @ D_or_zero(n, m, i)
    rhs = ((m - i + 1) * (N - m - i + 1) * D_or_zero(n, m, i - 1)
           + i * (N - 2 * i) * D_or_zero(n, m, i)
           + (i + 1) ** 2 * D_or_zero(n, m, i + 1))
    return compare("Recursion", (n, m, i), lhs, rhs, full_diff)


def check_DelDel(n: int, m: int, i: int, full_diff: bool = False) -> IdentityReport:
    N = num_slots(n)
    if not 0 <= i < m:
        raise ValueError(f"DelDel needs 0 <= i and i+1 <= m, got i={i}, m={m}")
    lhs = (i + 1) ** 2 * build_Delta(n, m, i + 1)
    # coefficient is negative whenever 2m < N + i + 1
    step = i * (2 * m - N - i - 1) * build_Delta(n, m, 0) + build_Delta(n, m, 1)
    rhs = step @ build_Delta(n, m, i)
    return compare("DelDel", (n, m, i), lhs, rhs, full_diff)


@dataclass
class CorollaryReport:
    params: tuple[int, int, int]
    premise: bool
    verified: list[int]
    holds: bool
    failed_at: int | None = None

    def to_json(self) -> dict:
        return {
            "identity": "Corollary",
            "params": dict(zip(("n", "m", "k"), self.params)),
            "premise": self.premise,
            "verified": self.verified,
            "holds": self.holds,
            "failed_at": self.failed_at,
        }


def check_corollary(n: int, m: int, k: int, X: DeckVector) -> CorollaryReport:
    """If ``Delta_k X = 0``, confirm ``Delta_i X = 0`` for all ``k <= i <= m``."""
    if X.catalog != get_catalog(n, m):
        raise ValueError("X must live on U(n, m)")
    if not apply(build_Delta(n, m, k), X).is_zero():
        return CorollaryReport((n, m, k), False, [], True)
    verified = []
    for i in range(k, m + 1):
        if not apply(build_Delta(n, m, i), X).is_zero():
            return CorollaryReport((n, m, k), True, verified, False, i)
        verified.append(i)
    return CorollaryReport((n, m, k), True, verified, True)


def check(which: str, n: int, m: int, i: int, full_diff: bool = False) -> IdentityReport:
    table = {"deld": check_DelD, "recursion": check_recursion, "deldel": check_DelDel}
    try:
        fn = table[which.lower()]
    except KeyError:
        raise ValueError(f"unknown identity {which!r}") from None
    return fn(n, m, i, full_diff)


def valid_orders(which: str, n: int, m: int, orders=range(4)) -> list[int]:
    N = num_slots(n)
    which = which.lower()
    if which == "deld":
        return [s for s in orders if s <= m]
    if which == "recursion":
        return [i for i in orders if i <= min(m, N - m)]
    if which == "deldel":
        return [i for i in orders if i + 1 <= m]
    raise ValueError(f"unknown identity {which!r}")
