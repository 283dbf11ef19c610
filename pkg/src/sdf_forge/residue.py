"""Modular arithmetic primitives: quadratic residues, squarefree tests, primes.

Everything here is exact integer arithmetic. No floating point is used on
any correctness-critical path; perfect-square detection goes through
``math.isqrt`` plus a verification multiply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Square tables are built with int64 intermediates (a*a must not overflow).
_MAX_TABLE_MODULUS = 2**31


@dataclass(frozen=True)
class Modulus:
    """A positive integer together with its prime factorization.

    ``factorization`` is a tuple of (prime, exponent) pairs with primes
    strictly increasing and exponents >= 1; the product reconstructs ``m``.
    """

    m: int
    factorization: tuple[tuple[int, int], ...]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factorization)


@dataclass(frozen=True)
class SquareTable:
    """The quadratic residues of Z_m.

    ``is_square[d]`` is True iff d = a^2 mod m for some a in {0,...,m-1};
    ``root[d]`` is the smallest such a, or -1 when d is a non-residue.
    Index 0 is always a residue (a = 0).
    """

    modulus: int
    is_square: np.ndarray
    root: np.ndarray

    def residues(self) -> list[int]:
        """All quadratic residues of Z_m, ascending."""
        return [int(d) for d in np.flatnonzero(self.is_square)]


@lru_cache(maxsize=128)
def squares_mod(m: int) -> SquareTable:
    """Table of squares mod m, computed by one pass over a = 0..m-1.

    Raises ValueError for m < 1.
    """
    if m < 1:
        raise ValueError(f"invalid modulus {m}; need m >= 1")
    if m > _MAX_TABLE_MODULUS:
        raise ValueError(f"modulus {m} exceeds square-table limit {_MAX_TABLE_MODULUS}")
    a = np.arange(m, dtype=np.int64)
    sq = (a * a) % m
    root = np.full(m, -1, dtype=np.int64)
    # Reversed assignment keeps the smallest root for each residue.
    root[sq[::-1]] = a[::-1]
    is_square = root >= 0
    is_square.flags.writeable = False
    root.flags.writeable = False
    return SquareTable(m, is_square, root)


def factorize(m: int) -> Modulus:
    """Prime factorization by trial division (intended for m <= 1e7)."""
    if m < 1:
        raise ValueError(f"cannot factorize {m}; need m >= 1")
    factors: list[tuple[int, int]] = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Modulus(m, tuple(factors))


def is_squarefree(m: int) -> bool:
    """True iff no prime square divides m. m = 1 is squarefree."""
    return factorize(m).is_squarefree()


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit by a plain Eratosthenes sieve."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def bertrand_prime(n: int) -> int:
    """Largest prime p with ceil(sqrt(n)/2) <= p <= floor(sqrt(n)).

    Bertrand's postulate puts a prime in [x, 2x], so the interval
    [sqrt(n)/2, sqrt(n)] contains one for every n >= 16; the largest is
    returned because it maximizes the multiples-of-p set built on it.
    """
    if n < 16:
        raise ValueError(f"n={n} too small; need n >= 16 so the prime interval is nonempty")
    hi = math.isqrt(n)
    lo = (hi + 1) // 2 if hi * hi == n else hi // 2 + 1
    candidates = [p for p in primes_upto(hi) if p >= lo]
    if not candidates:
        raise ValueError(f"no prime in [{lo}, {hi}] for n={n}")
    return candidates[-1]


def is_perfect_square(d: int) -> bool:
    """True iff d = a^2 for some integer a >= 0. Exact at any size."""
    if d < 0:
        return False
    r = math.isqrt(d)
    return r * r == d
