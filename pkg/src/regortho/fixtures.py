"""Built-in regular rational orthogonal matrices of orders 4 and 10."""
from __future__ import annotations

from fractions import Fraction

from .exact import Matrix

HADAMARD4_SIGNS = (
    (-1, 1, 1, 1),
    (1, -1, 1, 1),
    (1, 1, -1, 1),
    (1, 1, 1, -1),
)

CONFERENCE10_SIGNS = (
    (0, 1, 1, 1, 1, 1, 1, -1, -1, -1),
    (1, 0, 1, 1, 1, -1, -1, 1, 1, -1),
    (1, 1, 0, -1, -1, 1, 1, 1, 1, -1),
    (1, 1, -1, 0, 1, -1, 1, 1, -1, 1),
    (1, 1, -1, 1, 0, 1, -1, -1, 1, 1),
    (1, -1, 1, -1, 1, 0, 1, -1, 1, 1),
    (1, -1, 1, 1, -1, 1, 0, 1, -1, 1),
    (-1, 1, 1, 1, -1, -1, 1, 0, 1, 1),
    (-1, 1, 1, -1, 1, 1, -1, 1, 0, 1),
    (-1, -1, -1, 1, 1, 1, 1, 1, 1, 0),
)


def hadamard4() -> Matrix:
    return Matrix(HADAMARD4_SIGNS).scale(Fraction(1, 2))


def conference10() -> Matrix:
    return Matrix(CONFERENCE10_SIGNS).scale(Fraction(1, 3))


FIXTURES = {
    "hadamard4": hadamard4,
    "conference10": conference10,
}


def get_fixture(name: str) -> Matrix:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}") from None
