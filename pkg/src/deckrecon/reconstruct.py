"""Recovering the k-edge deck from the modified k-deck.

``reconstruct_deck`` inverts ``Delta_k`` by search over the catalog (or over
small multisets, or by an exact linear solve for larger collections) and
returns the ``d_k`` image, checking that every preimage agrees on it.
``theorem_pipeline`` replays the induction behind that guarantee for one
parameter point: either the complemented decks fall under the Lovász bound
(branch A), or the step operator ``(r-1)(2m-r-N) I + Delta_1`` is invertible
and the problem drops to ``r - 1`` (branch B), down to ``r = 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from . import graph6
from .catalog import DeckVector, complement_vector, get_catalog, singleton
from .graph import num_slots
from .linalg import bareiss_rank, solve_rational
from .operators import apply, build_d, build_Delta
from .spectral import InvertibilityCertificate, invertibility_certificate

MAX_MULTISET = 3

RECONSTRUCTED = "reconstructed"
NO_PREIMAGE = "no-preimage"
VIOLATION = "violation-found"


@dataclass
class ReconstructionResult:
    input: DeckVector
    k: int
    mode: str
    matches: list[tuple[int, ...]] = field(default_factory=list)
    deck: DeckVector | None = None
    well_defined: bool = True

    @property
    def status(self) -> str:
        if not self.well_defined:
            return VIOLATION
        return NO_PREIMAGE if self.deck is None else RECONSTRUCTED

    def to_json(self) -> dict:
        cat = self.input.catalog
        return {
            "n": cat.n,
            "m": cat.m,
            "k": self.k,
            "mode": self.mode,
            "status": self.status,
            "input": self.input.to_json(),
            "matches": [[graph6.encode(cat[i]) for i in t] for t in self.matches],
            "well_defined": self.well_defined,
            "deck": None if self.deck is None else self.deck.to_json(),
        }


def single_total(n: int, m: int, k: int) -> int:
    """Size of the modified k-deck of one graph."""
    return comb(m, k) * comb(num_slots(n) - m + k, k)


def reconstruct_deck(n: int, m: int, k: int, v: DeckVector) -> ReconstructionResult:
    cat = get_catalog(n, m)
    if v.catalog != cat:
        raise ValueError(f"modified deck must live on U({n},{m})")
    if v.signed:
        raise ValueError("a modified deck has nonnegative counts")
    Dk, dk = build_Delta(n, m, k), build_d(n, m, k)
    unit = single_total(n, m, k)
    t, rem = divmod(v.total, unit)
    if t == 0 or rem:
        return ReconstructionResult(v, k, "single" if t <= 1 else "multiset")
    if t > MAX_MULTISET:
        return _reconstruct_linear(v, k)

    mod_cols = [tuple(Dk.column(c)) for c in range(len(cat))]
    target = v.counts
    matches = []
    for combo in combinations_with_replacement(range(len(cat)), t):
        if t == 1:
            hit = mod_cols[combo[0]] == target
        else:
            hit = tuple(map(sum, zip(*(mod_cols[c] for c in combo)))) == target
        if hit:
            matches.append(combo)
    mode = "single" if t == 1 else "multiset"
    if not matches:
        return ReconstructionResult(v, k, mode)
    decks = set()
    for combo in matches:
        X = DeckVector(cat, [combo.count(c) for c in range(len(cat))])
        decks.add(apply(dk, X))
    deck = min(decks, key=lambda d: d.counts)
    return ReconstructionResult(v, k, mode, matches, deck, len(decks) == 1)


def _reconstruct_linear(v: DeckVector, k: int) -> ReconstructionResult:
    n, m = v.catalog.n, v.catalog.m
    A = build_Delta(n, m, k).to_dense()
    d = build_d(n, m, k).to_dense()
    x = solve_rational(A, v.counts)
    if x is None:
        return ReconstructionResult(v, k, "linear")
    # d_k X is independent of the chosen X iff ker Delta_k lies in ker d_k
    well_defined = bareiss_rank(A + d) == bareiss_rank(A)
    deck = [sum((Fraction(a) * xi for a, xi in zip(row, x)), Fraction(0)) for row in d]
    if any(c.denominator != 1 or c < 0 for c in deck):
        return ReconstructionResult(v, k, "linear", well_defined=well_defined)
    out = DeckVector(get_catalog(n, m - k), [int(c) for c in deck])
    return ReconstructionResult(v, k, "linear", [], out, well_defined)


@dataclass
class TheoremReport:
    n: int
    m: int
    k: int
    pairs_checked: int
    violations: list[tuple[int, int]]
    collisions: int

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        cat = get_catalog(self.n, self.m)
        return {"n": self.n, "m": self.m, "k": self.k,
                "pairs_checked": self.pairs_checked,
                "modified_deck_collisions": self.collisions,
                "violations": [[graph6.encode(cat[a]), graph6.encode(cat[b])]
                               for a, b in self.violations],
                "holds": self.holds}


def verify_theorem(n: int, m: int, k: int) -> TheoremReport:
    """Check ``Delta_k X_G = Delta_k X_H  =>  d_k X_G = d_k X_H`` over all pairs of ``U(n, m)``."""
    cat = get_catalog(n, m)
    Dk, dk = build_Delta(n, m, k), build_d(n, m, k)
    groups = defaultdict(list)
    for c in range(len(cat)):
        groups[tuple(Dk.column(c))].append(c)
    violations, collisions = [], 0
    for members in groups.values():
        decks = [tuple(dk.column(c)) for c in members]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                collisions += 1
                if decks[a] != decks[b]:
                    violations.append((members[a], members[b]))
    return TheoremReport(n, m, k, comb(len(cat), 2), sorted(violations), collisions)


def complement_equivalence(n: int, m: int, r: int, P: DeckVector) -> bool:
    """``(Delta_r X_P)^c == d_r X_{P'}`` with ``P'`` the complements of ``r-ED(P)``.

    Checked for every member of ``P`` and for ``P`` as a whole.
    """
    if P.signed:
        raise ValueError("P must be a collection")
    if P.catalog != get_catalog(n, m):
        raise ValueError(f"P must live on U({n},{m})")

    def holds(X):
        lhs = complement_vector(apply(build_Delta(n, m, r), X))
        deck = apply(build_d(n, m, r), X)
        rhs = apply(build_d(n, num_slots(n) - m + r, r), complement_vector(deck))
        return lhs == rhs

    members = [singleton(P.catalog, P.catalog[i]) for i, _ in P.nonzero()]
    return all(holds(X) for X in members) and holds(P)


@dataclass
class LovaszReport:
    n: int
    p: int
    k: int
    bound_holds: bool
    rank: int
    cols: int

    @property
    def full_column_rank(self) -> bool:
        return self.rank == self.cols

    @property
    def consistent(self) -> bool:
        return not self.bound_holds or self.full_column_rank

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "k": self.k, "N": num_slots(self.n),
                "bound_holds": self.bound_holds, "full_column_rank": self.full_column_rank,
                "rank": self.rank, "cols": self.cols, "consistent": self.consistent}


def lovasz_rank_check(n: int, p: int, k: int) -> LovaszReport:
    """Exact rank of ``d_k`` on ``U(n, p)`` next to the bound ``2p - k + 1 > N``."""
    dk = build_d(n, p, k)
    return LovaszReport(n, p, k, 2 * p - k + 1 > num_slots(n),
                        bareiss_rank(dk.to_dense()), len(dk.cols))


@dataclass
class PipelineStep:
    r: int
    branch: str
    lovasz_applies: bool
    covered: bool
    lovasz: LovaszReport | None = None
    certificate: InvertibilityCertificate | None = None

    def to_json(self) -> dict:
        return {"r": self.r, "branch": self.branch, "lovasz_applies": self.lovasz_applies,
                "covered": self.covered,
                "lovasz": None if self.lovasz is None else self.lovasz.to_json(),
                "certificate": None if self.certificate is None else self.certificate.to_json()}


@dataclass
class PipelineReport:
    n: int
    m: int
    k: int
    steps: list[PipelineStep]

    @property
    def branch(self) -> str:
        return self.steps[0].branch

    @property
    def covered(self) -> bool:
        return all(s.covered for s in self.steps)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "k": self.k, "N": num_slots(self.n),
                "branch": self.branch, "covered": self.covered,
                "steps": [s.to_json() for s in self.steps]}


def theorem_pipeline(n: int, m: int, k: int, run_checks: bool = True) -> PipelineReport:
    """Case analysis of the induction for ``(n, m, k)``.

    ``run_checks`` also performs the exact rank test in branch A and the
    exact nonsingularity test of the step matrix in branch B.
    """
    N = num_slots(n)
    if not 1 <= k <= m <= N:
        raise ValueError(f"need 1 <= k <= m <= {N}, got m={m}, k={k}")
    steps = []
    r = k
    while True:
        p = N - m + r
        lovasz = 2 * p - r + 1 > N
        if r == 1:
            steps.append(PipelineStep(1, "terminal", lovasz, True))
            break
        if lovasz:
            rep = lovasz_rank_check(n, p, r) if run_checks else None
            ok = rep is None or rep.full_column_rank
            steps.append(PipelineStep(r, "A", True, ok, lovasz=rep))
            break
        cert = invertibility_certificate(n, m, r, check_matrix=run_checks)
        ok = cert.invertible and cert.matrix_nonsingular is not False
        steps.append(PipelineStep(r, "B", False, ok, certificate=cert))
        if not ok:
            break
        r -= 1
    return PipelineReport(n, m, k, steps)
