"""Brute-force checks of the permutation-determinant identities.

Every function here enumerates S_n exhaustively and compares exact sums
against closed forms:

* signed counts over {sigma : sigma(I) = J} vanish once |I| >= 2 and equal
  (n - |I|)! otherwise;
* sum over S_n of det(I + M P_sigma) = n! + (n-1)! e^T M e;
* when e^T M e = -n, the sum restricted to sigma(i) = j equals
  -(n-2)! (1 + row_i sum) (1 + col_j sum);
* det(I + M P) = 0 for every P exactly when M e = -e or M^T e = -e.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .cayley import DEFAULT_BUDGET, search_regularizing_permutation
from .errors import CapExceeded, DimensionError, HypothesisViolated, PreconditionViolated
from .exact import Matrix, ShiftedColumnDet, format_rational
from .perms import Permutation, all_permutations, index_set, restricted_sign

log = logging.getLogger(__name__)

HARD_CAP = 10
DEFAULT_CAP = 8


def _check_cap(n: int, cap: int) -> None:
    if cap > HARD_CAP:
        raise CapExceeded(f"cap {cap} exceeds the hard limit {HARD_CAP}")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the exhaustive cap {cap}")
    if n > DEFAULT_CAP:
        log.warning("exhaustive scan over %d! = %d permutations", n, math.factorial(n))


def enumerate_permutations(n: int, cap: int = HARD_CAP) -> Iterator[Permutation]:
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_cap(n, cap)
    return all_permutations(n)


def check_lemma_sum0(n: int, rows, cols) -> int:
    """Sum of sign(sigma, I) over sigma in S_n with sigma(I) = J."""
    rows, cols = index_set(rows, n), index_set(cols, n)
    if len(rows) != len(cols):
        raise DimensionError("|I| != |J|")
    target = set(cols)
    total = 0
    for sigma in all_permutations(n):
        if {sigma(i) for i in rows} == target:
            total += restricted_sign(sigma, rows)
    return total


def sum_det_all_perms(m: Matrix, cap: int = DEFAULT_CAP) -> Fraction:
    """Sum over every sigma in S_n of det(I + M P_sigma)."""
    _check_cap(m.nrows, cap)
    shifted = ShiftedColumnDet(m)
    total = sum(shifted.scaled(order) for order in itertools.permutations(range(m.nrows)))
    return shifted.normalize(total)


def all_perms_closed_form(m: Matrix) -> Fraction:
    n = m.nrows
    return math.factorial(n) + math.factorial(n - 1) * m.total()


def sum_det_perms_fixing(m: Matrix, i: int, j: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Sum of det(I + M P_sigma) over sigma with sigma(i) = j (1-based).

    Only defined under the hypothesis e^T M e = -n.
    """
    n = m.nrows
    if not m.is_square or n < 2:
        raise DimensionError("need a square matrix with n >= 2")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"(i, j) = ({i}, {j}) out of range")
    if m.total() != -n:
        raise HypothesisViolated(f"entry sum is {m.total()}, expected {-n}")
    _check_cap(n, cap)
    shifted = ShiftedColumnDet(m)
    rest = [k for k in range(n) if k != j - 1]
    total = 0
    for tail in itertools.permutations(rest):
        order = list(tail)
        order.insert(i - 1, j - 1)
        total += shifted.scaled(order)
    return shifted.normalize(total)


def fixed_perms_closed_form(m: Matrix, i: int, j: int) -> Fraction:
    n = m.nrows
    return -math.factorial(n - 2) * (1 + m.row_sums()[i - 1]) * (1 + m.col_sums()[j - 1])


@dataclass(frozen=True)
class TheoremFiveVerdict:
    all_singular: bool
    row_condition: bool
    col_condition: bool
    witness: Permutation | None

    @property
    def forward_holds(self) -> bool:
        return not self.all_singular or self.row_condition or self.col_condition

    @property
    def converse_holds(self) -> bool:
        return self.all_singular or not (self.row_condition or self.col_condition)

    def to_json(self) -> dict:
        return {
            "all_singular": self.all_singular,
            "row_condition": self.row_condition,
            "col_condition": self.col_condition,
            "witness": list(self.witness.image) if self.witness else None,
        }


def theorem5_verdict(
    m: Matrix, mode: str = "exhaustive", cap: int = DEFAULT_CAP,
    seed: int = 0, budget: int = DEFAULT_BUDGET,
) -> TheoremFiveVerdict:
    """Decide whether det(I + M P) vanishes for every permutation matrix P.

    ``mode="exhaustive"`` scans S_n in lexicographic order and returns the first
    nonsingular permutation as witness. ``mode="search"`` runs the regularizing
    permutation search instead and works for any n.
    """
    if not m.is_square:
        raise DimensionError("square matrix required")
    n = m.nrows
    row = all(x == -1 for x in m.row_sums())
    col = all(x == -1 for x in m.col_sums())
    if mode == "exhaustive":
        _check_cap(n, cap)
        shifted = ShiftedColumnDet(m)
        for perm in all_permutations(n):
            if shifted.scaled(perm.column_order()) != 0:
                return TheoremFiveVerdict(False, row, col, perm)
        return TheoremFiveVerdict(True, row, col, None)
    if mode == "search":
        try:
            _, perm = search_regularizing_permutation(m, seed=seed, budget=budget)
        except PreconditionViolated:
            # the row/column condition forces singularity: (I + MP)^T e or (I + MP) e vanishes
            return TheoremFiveVerdict(True, row, col, None)
        return TheoremFiveVerdict(False, row, col, perm)
    raise ValueError(f"unknown mode {mode!r}")


# --------------------------------------------------------------------------
# samplers


def _rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_matrix(n: int, rng: random.Random, height: int = 3) -> Matrix:
    return Matrix([[_rational(rng, height) for _ in range(n)] for _ in range(n)], n)


def random_row_condition(n: int, rng: random.Random, height: int = 3) -> Matrix:
    """Random M with M e = -e (last column absorbs the row sums)."""
    rows = [[_rational(rng, height) for _ in range(n - 1)] for _ in range(n)]
    for r in rows:
        r.append(-1 - sum(r, Fraction(0)))
    return Matrix(rows, n)


def random_col_condition(n: int, rng: random.Random, height: int = 3) -> Matrix:
    return random_row_condition(n, rng, height).T


def random_total_minus_n(n: int, rng: random.Random, height: int = 3) -> Matrix:
    """Random M with entry sum -n (the last diagonal entry absorbs it)."""
    rows = [[_rational(rng, height) for _ in range(n)] for _ in range(n)]
    rows[-1][-1] = 0
    rows[-1][-1] = -n - sum((sum(r, Fraction(0)) for r in rows), Fraction(0))
    return Matrix(rows, n)


# --------------------------------------------------------------------------
# reports


def _matrix_json(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.rows]


@dataclass
class VerificationReport:
    n: int
    trials: int = 0
    identities_checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add_violation(self, m: Matrix | None, direction: str, **extra) -> None:
        entry = {"matrix": _matrix_json(m) if m is not None else None, "direction": direction}
        entry.update(extra)
        self.violations.append(entry)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "violations": self.violations,
            "identities_checked": self.identities_checked,
        }


def _record_verdict(report: VerificationReport, m: Matrix, verdict: TheoremFiveVerdict) -> None:
    report.identities_checked += 2
    if not verdict.forward_holds:
        report.add_violation(m, "forward")
    if not verdict.converse_holds:
        report.add_violation(m, "converse")


def fuzz_theorem5(
    n: int, trials: int = 100, seed: int = 0, height: int = 3,
    conditioned: int | None = None, cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Check both directions of the all-singular characterization on random inputs.

    Runs ``trials`` unconstrained samples plus ``conditioned`` samples each with
    M e = -e and M^T e = -e (default: max(1, trials // 5)).
    """
    _check_cap(n, cap)
    rng = random.Random(seed)
    if conditioned is None:
        conditioned = max(1, trials // 5)
    report = VerificationReport(n)
    samplers = (
        [random_matrix] * trials
        + [random_row_condition] * conditioned
        + [random_col_condition] * conditioned
    )
    for sampler in samplers:
        m = sampler(n, rng, height)
        _record_verdict(report, m, theorem5_verdict(m, cap=cap))
        report.trials += 1
    return report


def verify_sum0(n: int, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Every index-set pair with |I| = |J| against the signed-count closed form."""
    _check_cap(n, cap)
    report = VerificationReport(n)
    labels = range(1, n + 1)
    for k in range(n + 1):
        subsets = list(itertools.combinations(labels, k))
        for rows in subsets:
            for cols in subsets:
                got = check_lemma_sum0(n, rows, cols)
                expected = math.factorial(n - k) if k <= 1 else 0
                report.identities_checked += 1
                if got != expected:
                    report.add_violation(None, "identity", I=list(rows), J=list(cols),
                                         got=got, expected=expected)
    report.trials = report.identities_checked
    return report


def verify_enmen(
    n: int, trials: int = 50, seed: int = 0, height: int = 3, cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Sum over S_n of det(I + M P) against n! + (n-1)! e^T M e."""
    _check_cap(n, cap)
    rng = random.Random(seed)
    report = VerificationReport(n)
    for _ in range(trials):
        m = random_matrix(n, rng, height)
        got, expected = sum_det_all_perms(m, cap), all_perms_closed_form(m)
        report.trials += 1
        report.identities_checked += 1
        if got != expected:
            report.add_violation(m, "identity", got=str(got), expected=str(expected))
    return report


def verify_mij(
    n: int, trials: int = 20, seed: int = 0, height: int = 3, cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Restricted sums sigma(i) = j against the product closed form, all (i, j)."""
    if n < 2:
        raise DimensionError("the restricted-sum identity needs n >= 2")
    _check_cap(n, cap)
    rng = random.Random(seed)
    report = VerificationReport(n)
    for _ in range(trials):
        m = random_total_minus_n(n, rng, height)
        report.trials += 1
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                got, expected = sum_det_perms_fixing(m, i, j, cap), fixed_perms_closed_form(m, i, j)
                report.identities_checked += 1
                if got != expected:
                    report.add_violation(m, "identity", i=i, j=j,
                                         got=str(got), expected=str(expected))
    return report
