"""Exact dense matrices over the rationals.

Entries are :class:`fractions.Fraction` values, which are always kept in
lowest terms. Determinants and linear solves clear denominators and run
fraction-free (Bareiss) elimination on Python integers, so no floating
point is involved anywhere.

Matrix entries are addressed with 0-based Python indices (``M[i, j]``);
index sets and permutations (see :mod:`regortho.perms`) use 1-based labels.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionError, FormatError, SingularMatrix

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(token: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q > 0); decimals and exponents are rejected."""
    token = token.strip()
    if not _RATIONAL_RE.match(token):
        raise FormatError(f"not an exact rational: {token!r}")
    if "/" in token:
        p, q = token.split("/")
        if int(q) == 0:
            raise FormatError(f"zero denominator: {token!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(token))


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


class Matrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise DimensionError("ragged rows")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def column(cls, entries: Sequence) -> Matrix:
        return cls([[x] for x in entries], 1)

    @classmethod
    def _raw(cls, rows: tuple[tuple[Fraction, ...], ...], ncols: int) -> Matrix:
        # trusted constructor: entries are already Fractions
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    # basic protocol -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix([{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]

    def column_entries(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    # arithmetic ---------------------------------------------------------
    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> Matrix:
        c = Fraction(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else (), self.nrows)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise DimensionError("vector length does not match column count")
        v = [Fraction(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.rows)

    def col_sums(self) -> tuple[Fraction, ...]:
        return self.T.row_sums()

    def total(self) -> Fraction:
        return sum(self.row_sums(), Fraction(0))

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def permute_columns(self, image: Sequence[int]) -> Matrix:
        """Return the matrix whose column i is column image[i] (0-based) of self."""
        return Matrix._raw(tuple(tuple(row[k] for k in image) for row in self.rows), len(image))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
        return Matrix._raw(
            tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx), len(col_idx)
        )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    cols = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    zero = Fraction(0)
    return Matrix._raw(
        tuple(tuple(sum(map(Fraction.__mul__, row, col), zero) for col in cols) for row in a.rows),
        b.ncols,
    )


def _require_square(a: Matrix) -> None:
    if not a.is_square:
        raise DimensionError(f"square matrix required, got {a.shape}")


# --------------------------------------------------------------------------
# integer kernels


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (x.denominator for x in values), 1)


def int_det(rows: list[list[int]]) -> int:
    """Bareiss determinant of an integer matrix. ``rows`` is consumed."""
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        rk = rows[k]
        if rk[k] == 0:
            for p in range(k + 1, n):
                if rows[p][k] != 0:
                    rows[k], rows[p] = rows[p], rk
                    rk = rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            if f:
                for j in range(k + 1, n):
                    ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (pivot * ri[j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def scaled_integer_rows(a: Matrix) -> tuple[list[list[int]], int]:
    """Scale every entry by the common denominator d; return (integer rows, d)."""
    d = _lcm_denominators(x for row in a.rows for x in row)
    return [[x.numerator * (d // x.denominator) for x in row] for row in a.rows], d


def det(a: Matrix) -> Fraction:
    """Exact determinant (denominators cleared row by row, then Bareiss)."""
    _require_square(a)
    rows = []
    scale = 1
    for row in a.rows:
        d = _lcm_denominators(row)
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in row])
    return Fraction(int_det(rows), scale)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Return X with A X = B by fraction-free Gauss-Jordan elimination."""
    _require_square(a)
    n = a.nrows
    if b.nrows != n:
        raise DimensionError(f"right-hand side has {b.nrows} rows, expected {n}")
    k = b.ncols
    width = n + k
    aug = []
    for ra, rb in zip(a.rows, b.rows):
        row = ra + rb
        d = _lcm_denominators(row)
        aug.append([x.numerator * (d // x.denominator) for x in row])
    prev = 1
    for c in range(n):
        if aug[c][c] == 0:
            for p in range(c + 1, n):
                if aug[p][c] != 0:
                    aug[c], aug[p] = aug[p], aug[c]
                    break
            else:
                raise SingularMatrix("matrix is singular")
        rc = aug[c]
        pivot = rc[c]
        for i in range(n):
            if i == c:
                continue
            ri = aug[i]
            f = ri[c]
            for j in range(width):
                if j != c:
                    ri[j] = (pivot * ri[j] - f * rc[j]) // prev
            ri[c] = 0
        prev = pivot
    # every diagonal entry now equals the final pivot
    return Matrix._raw(
        tuple(tuple(Fraction(x, prev) for x in row[n:]) for row in aug), k
    )


def inverse(a: Matrix) -> Matrix:
    _require_square(a)
    return solve(a, Matrix.identity(a.nrows))


def charpoly(a: Matrix) -> list[Fraction]:
    """Coefficients of det(lambda*I + A), leading coefficient first.

    Faddeev-LeVerrier recursion run on the integer matrix -dA, where d clears
    all denominators; the coefficients are rescaled by powers of d afterwards.
    """
    _require_square(a)
    n = a.nrows
    rows, d = scaled_integer_rows(a)
    b = [[-x for x in row] for row in rows]
    coeffs = [1]
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        cols = list(zip(*m))
        bm = [[sum(map(int.__mul__, row, col)) for col in cols] for row in b]
        c = -sum(bm[i][i] for i in range(n)) // k
        coeffs.append(c)
        if k < n:
            for i in range(n):
                bm[i][i] += c
            m = bm
    # coeffs[k] multiplies mu^(n-k) with mu = d * lambda
    return [Fraction(c, d ** k) for k, c in enumerate(coeffs)]


def horner(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def submatrix_det(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on 1-based row labels ``rows`` and column labels ``cols``.

    The empty submatrix has determinant 1.
    """
    _require_square(m)
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise DimensionError("row and column index sets differ in size")
    n = m.nrows
    for idx in rows + cols:
        if not 1 <= idx <= n:
            raise DimensionError(f"index {idx} out of range 1..{n}")
    if not rows:
        return Fraction(1)
    return det(m.submatrix([i - 1 for i in sorted(rows)], [j - 1 for j in sorted(cols)]))


# --------------------------------------------------------------------------
# predicates


def is_orthogonal(q: Matrix) -> bool:
    _require_square(q)
    return q.T @ q == Matrix.identity(q.nrows)


def is_regular(q: Matrix) -> bool:
    """Every row sum equals one."""
    _require_square(q)
    return all(s == 1 for s in q.row_sums())


def is_permutation_matrix(q: Matrix) -> bool:
    _require_square(q)
    for row in q.rows:
        if sorted(row) != [0] * (q.ncols - 1) + [1]:
            return False
    return all(sorted(col) == [0] * (q.nrows - 1) + [1] for col in zip(*q.rows))


def is_skew(s: Matrix) -> bool:
    _require_square(s)
    return s.T == -s


# --------------------------------------------------------------------------
# text format


def format_matrix(m: Matrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    lines.extend(" ".join(format_rational(x) for x in row) for row in m.rows)
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> list[list[str]]:
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(stripped.split())
    return out


def parse_matrix(text: str) -> Matrix:
    """Parse the ``n m`` header format; ``#`` lines are comments."""
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty matrix text")
    header = lines[0]
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise FormatError(f"bad header: {' '.join(header)!r}")
    nrows, ncols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != nrows:
        raise FormatError(f"expected {nrows} rows, found {len(body)}")
    rows = []
    for k, tokens in enumerate(body, start=1):
        if len(tokens) != ncols:
            raise FormatError(f"row {k}: expected {ncols} entries, found {len(tokens)}")
        rows.append([parse_rational(t) for t in tokens])
    return Matrix(rows, ncols)


class ShiftedColumnDet:
    """Evaluate det(I + M P) for many column reorderings P of a fixed M.

    M is scaled once to an integer matrix N = d M, so each evaluation is a
    single Bareiss pass on det(d I + N P) = d^n det(I + M P).
    """

    def __init__(self, m: Matrix):
        _require_square(m)
        self.n = m.nrows
        self._rows, self._d = scaled_integer_rows(m)
        self._scale = self._d ** self.n

    def scaled(self, order: Sequence[int]) -> int:
        """d^n * det(I + M P) where column i of M P is column order[i] of M."""
        d = self._d
        rows = [[r[k] for k in order] for r in self._rows]
        for i in range(self.n):
            rows[i][i] += d
        return int_det(rows)

    def __call__(self, order: Sequence[int]) -> Fraction:
        return Fraction(self.scaled(order), self._scale)

    def normalize(self, scaled_value: int) -> Fraction:
        return Fraction(scaled_value, self._scale)
