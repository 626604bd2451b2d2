import itertools
import random

import pytest

from regortho.errors import DimensionError
from regortho.exact import Matrix
from regortho.perms import Permutation, all_permutations, restricted_sign


def test_matrix_convention():
    sigma = Permutation((2, 3, 1))
    p = sigma.matrix()
    for i in range(1, 4):
        assert p[sigma(i) - 1, i - 1] == 1
    m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    mp = m @ p
    for i in range(1, 4):
        assert mp.column_entries(i - 1) == m.column_entries(sigma(i) - 1)
    assert m.permute_columns(sigma.column_order()) == mp


def test_permutation_matrices_are_regular():
    for sigma in all_permutations(4):
        assert sigma.matrix().apply([1] * 4) == (1,) * 4


def test_composition_matches_matrix_product():
    for n in range(1, 5):
        perms = list(all_permutations(n))
        for s, t in itertools.product(perms, perms):
            assert s.matrix() @ t.matrix() == (s * t).matrix()


def test_inverse_and_from_matrix():
    rng = random.Random(1)
    for _ in range(20):
        s = Permutation.random(6, rng)
        assert (s * s.inverse()).is_identity()
        assert Permutation.from_matrix(s.matrix()) == s
        assert s.inverse().matrix() == s.matrix().T


def test_restricted_sign_examples():
    assert all(restricted_sign(Permutation.identity(4), idx) == 1
               for k in range(5) for idx in itertools.combinations(range(1, 5), k))
    assert restricted_sign(Permutation((2, 1, 3)), {1, 2}) == -1
    rng = random.Random(5)
    for _ in range(10):
        s = Permutation.random(5, rng)
        assert restricted_sign(s, ()) == 1
        assert all(restricted_sign(s, {i}) == 1 for i in range(1, 6))
    with pytest.raises(DimensionError):
        restricted_sign(Permutation.identity(3), {4})


def test_restricted_sign_on_full_set_is_sign():
    for n in range(1, 7):
        for s in all_permutations(n):
            assert restricted_sign(s, range(1, n + 1)) == s.sign()


def test_sign_by_transposition_count():
    # sign = (-1)^(n - number of cycles)
    for s in all_permutations(5):
        seen, cycles = set(), 0
        for i in range(1, 6):
            if i not in seen:
                cycles += 1
                j = i
                while j not in seen:
                    seen.add(j)
                    j = s(j)
        assert s.sign() == (-1) ** (5 - cycles)


def test_transposition_flips_restricted_sign():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 7)
        sigma = Permutation.random(n, rng)
        k = rng.randint(2, n)
        idx = sorted(rng.sample(range(1, n + 1), k))
        image = [sigma(i) for i in idx]
        j1, j2 = rng.sample(image, 2)
        tau = Permutation.transposition(n, j1, j2)
        assert restricted_sign(tau * sigma, idx) == -restricted_sign(sigma, idx)


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))
