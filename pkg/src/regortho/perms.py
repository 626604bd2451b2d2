"""Permutations of {1..n}, index sets and restricted signs.

``Permutation.image[i - 1]`` is sigma(i). The matrix of sigma has its ones at
positions (sigma(i), i), so ``P_sigma @ e_i = e_sigma(i)``, the product of
matrices matches composition (``P_sigma @ P_tau == P_(sigma o tau)``) and
``M @ P_sigma`` lists the columns M_sigma(1), ..., M_sigma(n).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError
from .exact import Matrix


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        image = list(range(1, n + 1))
        image[i - 1], image[j - 1] = j, i
        return cls(tuple(image))

    @classmethod
    def cyclic_shift(cls, n: int, k: int) -> Permutation:
        """i -> i + k (mod n)."""
        return cls(tuple((i + k) % n + 1 for i in range(n)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> Permutation:
        image = list(range(1, n + 1))
        rng.shuffle(image)
        return cls(tuple(image))

    @classmethod
    def from_matrix(cls, p: Matrix) -> Permutation:
        """Inverse of :meth:`matrix`; ``p`` must be a permutation matrix."""
        image = []
        for i in range(p.ncols):
            col = p.column_entries(i)
            image.append(col.index(1) + 1)
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise DimensionError("permutations of different degree")
        return Permutation(tuple(self.image[j - 1] for j in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, s in enumerate(self.image, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return -1 if inversions(self.image) % 2 else 1

    def is_identity(self) -> bool:
        return self.image == tuple(range(1, self.n + 1))

    def matrix(self) -> Matrix:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i, s in enumerate(self.image):
            rows[s - 1][i] = 1
        return Matrix(rows, n)

    def column_order(self) -> tuple[int, ...]:
        """0-based column selection realizing ``M @ self.matrix()``."""
        return tuple(s - 1 for s in self.image)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.image)) + ")"


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n, lexicographic by image."""
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


def index_set(indices: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Validate and sort a set of 1-based indices."""
    out = tuple(sorted(set(int(i) for i in indices)))
    if n is not None:
        for i in out:
            if not 1 <= i <= n:
                raise DimensionError(f"index {i} out of range 1..{n}")
    elif out and out[0] < 1:
        raise DimensionError(f"index {out[0]} out of range")
    return out


def restricted_sign(sigma: Permutation, indices: Iterable[int]) -> int:
    """Parity of the inversions of (sigma(i_1), ..., sigma(i_k)) over sorted I."""
    idx = index_set(indices, sigma.n)
    return -1 if inversions([sigma(i) for i in idx]) % 2 else 1

