import itertools
import random
from fractions import Fraction

import pytest

from regortho.exact import Matrix


def leibniz_det(rows):
    """Determinant by the permutation expansion; independent of the Bareiss path."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Fraction(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def minor(rows, i, j):
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def adjugate_inverse(rows):
    n = len(rows)
    d = leibniz_det(rows)
    return [[(-1) ** (i + j) * leibniz_det(minor(rows, j, i)) / d for j in range(n)]
            for i in range(n)]


def random_rational_matrix(n, rng, height=4):
    return Matrix([[Fraction(rng.randint(-height, height), rng.randint(1, height))
                    for _ in range(n)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20241014)
