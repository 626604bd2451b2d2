"""Square-free testing of (possibly large) integers."""
from __future__ import annotations

import math
from functools import lru_cache

from sympy import isprime, primerange
from sympy.ntheory import pollard_rho

from .errors import FactorizationTimeout

TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 100_000


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primerange(2, TRIAL_LIMIT))


def _is_square(m: int) -> bool:
    r = math.isqrt(m)
    return r * r == m


def _split_large(m: int, budget: int) -> list[int]:
    """Prime factors (with multiplicity) of m, whose factors all exceed TRIAL_LIMIT."""
    if m == 1:
        return []
    if isprime(m):
        return [m]
    if _is_square(m):
        r = math.isqrt(m)
        return _split_large(r, budget) * 2
    for retry in range(5):
        f = pollard_rho(m, a=1 + retry, retries=0, seed=1234 + retry, max_steps=budget)
        if f is not None and 1 < f < m:
            return sorted(_split_large(f, budget) + _split_large(m // f, budget))
    raise FactorizationTimeout(f"could not split a {m.bit_length()}-bit cofactor")


def is_squarefree(m: int, budget: int = DEFAULT_RHO_BUDGET) -> bool:
    """True iff no prime square divides m (0 is not square-free).

    Trial division below 10^6, then Pollard rho with ``budget`` steps per
    attempt. Raises FactorizationTimeout when a cofactor cannot be split.
    """
    m = abs(m)
    if m == 0:
        return False
    for p in _small_primes():
        if p * p > m:
            return True
        if m % p == 0:
            m //= p
            if m % p == 0:
                return False
    if m == 1:
        return True
    if _is_square(m):
        return False
    factors = _split_large(m, budget)
    return len(factors) == len(set(factors))
