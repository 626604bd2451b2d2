"""Cayley transforms and decompositions of rational orthogonal matrices.

The forward map sends a skew-symmetric S to Q = (I + S)^-1 (I - S). A
regular rational orthogonal Q (one with Q e = e) is decomposed by finding a
permutation P such that Q P has no eigenvalue -1, after which
S = (I + QP)^-1 (I - QP) has zero row sums and Q = (I + S)^-1 (I - S) P^T.
"""
from __future__ import annotations

import itertools
import json
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    NotOrthogonal,
    NotRegularOrthogonal,
    NotSkewSymmetric,
    PreconditionViolated,
    SearchExhausted,
    EigenvalueMinusOne,
    SingularMatrix,
)
from .exact import (
    Matrix,
    ShiftedColumnDet,
    det,
    is_orthogonal,
    is_regular,
    is_skew,
    parse_rational,
    solve,
)
from .perms import Permutation, all_permutations

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1000
EXHAUSTIVE_PERMUTATION_LIMIT = 8
EXHAUSTIVE_SIGN_LIMIT = 16
CONVENTION = "Q=(I+S)^{-1}(I-S)P^T"


@dataclass(frozen=True)
class SkewZeroRowSum:
    """A skew-symmetric rational matrix whose rows all sum to zero."""

    inner: Matrix

    def __post_init__(self):
        if not self.inner.is_square or not is_skew(self.inner):
            raise NotSkewSymmetric("matrix is not skew-symmetric")
        if any(s != 0 for s in self.inner.row_sums()):
            raise PreconditionViolated("skew matrix has a nonzero row sum")

    @property
    def n(self) -> int:
        return self.inner.nrows


@dataclass(frozen=True)
class RegularCayleyDecomposition:
    """Q = (I + S)^-1 (I - S) P^T, with P the regularizing permutation."""

    S: SkewZeroRowSum
    P: Permutation

    def reconstruct(self) -> Matrix:
        return cayley_forward(self.S) @ self.P.matrix().T

    def to_json(self) -> dict:
        return {
            "n": self.S.n,
            "S": [[str(x) for x in row] for row in self.S.inner.rows],
            "P": list(self.P.image),
            "convention": CONVENTION,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> RegularCayleyDecomposition:
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("convention", CONVENTION) != CONVENTION:
            raise ValueError(f"unsupported convention {data['convention']!r}")
        s = Matrix([[parse_rational(x) for x in row] for row in data["S"]])
        return cls(SkewZeroRowSum(s), Permutation(tuple(data["P"])))


@dataclass(frozen=True)
class SignDiagonalDecomposition:
    """Q = D (I + S)^-1 (I - S) with D = diag(signs)."""

    D: tuple[int, ...]
    S: Matrix

    def D_matrix(self) -> Matrix:
        return Matrix.diagonal(self.D)

    def reconstruct(self) -> Matrix:
        return self.D_matrix() @ cayley_forward(self.S)

    def to_json(self) -> dict:
        return {
            "n": self.S.nrows,
            "D": list(self.D),
            "S": [[str(x) for x in row] for row in self.S.rows],
            "convention": "Q=D(I+S)^{-1}(I-S)",
        }


def _as_matrix(s: SkewZeroRowSum | Matrix) -> Matrix:
    return s.inner if isinstance(s, SkewZeroRowSum) else s


def cayley_forward(s: SkewZeroRowSum | Matrix) -> Matrix:
    s = _as_matrix(s)
    if not s.is_square or not is_skew(s):
        raise NotSkewSymmetric("Cayley transform needs a skew-symmetric matrix")
    eye = Matrix.identity(s.nrows)
    return solve(eye + s, eye - s)


def cayley_inverse(q: Matrix) -> Matrix:
    """S = (I + Q)^-1 (I - Q) for orthogonal Q without eigenvalue -1."""
    if not q.is_square or not is_orthogonal(q):
        raise NotOrthogonal("Cayley inverse needs an orthogonal matrix")
    eye = Matrix.identity(q.nrows)
    try:
        return solve(eye + q, eye - q)
    except SingularMatrix:
        raise EigenvalueMinusOne("det(I + Q) = 0") from None


# --------------------------------------------------------------------------
# permutation search


def candidate_permutations(
    n: int, seed: int = 0, budget: int = DEFAULT_BUDGET,
    exhaustive_limit: int = EXHAUSTIVE_PERMUTATION_LIMIT,
) -> Iterator[tuple[str, Permutation]]:
    """Yield (stage, permutation) in the fixed search order.

    Stages: identity, transpositions (lexicographic pairs), cyclic shifts,
    ``budget`` seeded random permutations, then all of S_n when
    n <= exhaustive_limit.
    """
    yield "identity", Permutation.identity(n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        yield "transposition", Permutation.transposition(n, i, j)
    for k in range(1, n):
        yield "cyclic-shift", Permutation.cyclic_shift(n, k)
    rng = random.Random(seed)
    for _ in range(budget):
        yield "random", Permutation.random(n, rng)
    if n <= exhaustive_limit:
        yield from (("exhaustive", p) for p in all_permutations(n))


def search_regularizing_permutation(
    m: Matrix, seed: int = 0, budget: int = DEFAULT_BUDGET,
    exhaustive_limit: int = EXHAUSTIVE_PERMUTATION_LIMIT,
) -> tuple[str, Permutation]:
    """Like :func:`find_regularizing_permutation` but also report the stage that succeeded."""
    if not m.is_square:
        raise PreconditionViolated("square matrix required")
    n = m.nrows
    if all(x == -1 for x in m.row_sums()):
        raise PreconditionViolated("M e = -e: det(I + M P) = 0 for every permutation P")
    if all(x == -1 for x in m.col_sums()):
        raise PreconditionViolated("M^T e = -e: det(I + M P) = 0 for every permutation P")
    shifted = ShiftedColumnDet(m)
    for stage, perm in candidate_permutations(n, seed, budget, exhaustive_limit):
        if shifted.scaled(perm.column_order()) != 0:
            return stage, perm
    if n <= exhaustive_limit:
        # would contradict the row/column-sum characterization
        raise AssertionError("exhaustive scan found no regularizing permutation")
    raise SearchExhausted(
        f"no permutation P with det(I + M P) != 0 found for n={n} after {budget} random trials"
    )


def find_regularizing_permutation(
    m: Matrix, seed: int = 0, budget: int = DEFAULT_BUDGET,
    exhaustive_limit: int = EXHAUSTIVE_PERMUTATION_LIMIT,
) -> Permutation:
    """Return a permutation P with det(I + M P) != 0.

    Raises PreconditionViolated when every row sum or every column sum of M
    is -1, since then no such P exists.
    """
    return search_regularizing_permutation(m, seed, budget, exhaustive_limit)[1]


def decompose_regular(
    q: Matrix, seed: int = 0, budget: int = DEFAULT_BUDGET,
) -> RegularCayleyDecomposition:
    if not q.is_square or not is_orthogonal(q) or not is_regular(q):
        raise NotRegularOrthogonal("input is not a regular rational orthogonal matrix")
    p = find_regularizing_permutation(q, seed=seed, budget=budget)
    qp = q.permute_columns(p.column_order())
    s = cayley_inverse(qp)
    return RegularCayleyDecomposition(SkewZeroRowSum(s), p)


# --------------------------------------------------------------------------
# sampling


def _random_rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_skew_zero_rowsum(n: int, seed: int = 0, height: int = 3) -> SkewZeroRowSum:
    """Sample a skew matrix with zero row sums.

    The entries s_ij with i < j < n are free; the last column is fixed by the
    row sums and the last row by skew-symmetry.
    """
    if n < 1 or height < 1:
        raise ValueError("need n >= 1 and height >= 1")
    return _sample_skew_zero_rowsum(n, random.Random(seed), height)


def _sample_skew_zero_rowsum(n: int, rng: random.Random, height: int) -> SkewZeroRowSum:
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            x = _random_rational(rng, height)
            s[i][j] = x
            s[j][i] = -x
    for i in range(n - 1):
        last = -sum(s[i][: n - 1], Fraction(0))
        s[i][n - 1] = last
        s[n - 1][i] = -last
    return SkewZeroRowSum(Matrix(s, n))


def random_skew(n: int, seed: int = 0, height: int = 3) -> Matrix:
    """Skew-symmetric sample with no row-sum constraint."""
    rng = random.Random(seed)
    s = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        x = _random_rational(rng, height)
        s[i][j] = x
        s[j][i] = -x
    return Matrix(s, n)


def sample_regular_orthogonal(
    n: int, seed: int = 0, height: int = 3,
) -> tuple[Matrix, SkewZeroRowSum, Permutation]:
    """Return (Q, S, P) with Q = (I + S)^-1 (I - S) P_matrix."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    s = _sample_skew_zero_rowsum(n, rng, height)
    p = Permutation.random(n, rng)
    q = cayley_forward(s).permute_columns(p.column_order())
    return q, s, p


def random_regular_orthogonal(n: int, seed: int = 0, height: int = 3) -> Matrix:
    return sample_regular_orthogonal(n, seed, height)[0]


# --------------------------------------------------------------------------
# sign-diagonal variant


def _sign_patterns(n: int) -> Iterator[tuple[int, ...]]:
    for bits in range(2 ** n):
        yield tuple(-1 if (bits >> i) & 1 else 1 for i in range(n))


def _det_id_plus_dq(q: Matrix, signs: tuple[int, ...]) -> Fraction:
    dq = Matrix._raw(tuple(tuple(x * s for x in row) for row, s in zip(q.rows, signs)), q.ncols)
    return det(Matrix.identity(q.nrows) + dq)


def find_sign_diagonal(q: Matrix, exhaustive_limit: int = EXHAUSTIVE_SIGN_LIMIT) -> tuple[int, ...]:
    """Signs D such that det(I + D Q) != 0.

    Greedy single-flip ascent on |det(I + D Q)| from D = I, then a full scan
    of the 2^n sign patterns.
    """
    n = q.nrows
    signs = (1,) * n
    value = abs(_det_id_plus_dq(q, signs))
    for _ in range(n):
        if value != 0:
            return signs
        best = None
        for k in range(n):
            flipped = signs[:k] + (-signs[k],) + signs[k + 1:]
            v = abs(_det_id_plus_dq(q, flipped))
            if best is None or v > best[0]:
                best = (v, flipped)
        if best[0] <= value:
            break
        value, signs = best
    if value != 0:
        return signs
    if n <= exhaustive_limit:
        for pattern in _sign_patterns(n):
            if _det_id_plus_dq(q, pattern) != 0:
                return pattern
        raise AssertionError("no sign pattern avoids eigenvalue -1")
    raise SearchExhausted(f"sign-pattern search gave up for n={n}")


def liebeck_osborn_decompose(q: Matrix) -> SignDiagonalDecomposition:
    if not q.is_square or not is_orthogonal(q):
        raise NotOrthogonal("input is not a rational orthogonal matrix")
    signs = find_sign_diagonal(q)
    dq = Matrix.diagonal(signs) @ q
    return SignDiagonalDecomposition(signs, cayley_inverse(dq))
