"""Coefficient fields: prime fields F_p and an optional rational mode."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DEFAULT_PRIME = 2147483647


@lru_cache(maxsize=64)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; ``p == 0`` selects exact rational arithmetic.

    Elements are plain ints in ``[0, p)`` (or ``Fraction`` when p is 0).
    """

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p < 0 or (self.p != 0 and not _is_prime(self.p)):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, c) -> int | Fraction:
        """Canonical representative of ``c``."""
        if self.p:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero in field")
        if self.p:
            return pow(int(c), -1, self.p)
        return 1 / Fraction(c)

    def symmetric(self, c) -> int | Fraction:
        """Representative in (-p/2, p/2], used for printing."""
        if self.p and c > self.p // 2:
            return c - self.p
        return c

    def random_element(self, rng: random.Random):
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-(2**31), 2**31))

    def random_nonzero(self, rng: random.Random):
        if self.p:
            return rng.randrange(1, self.p)
        c = 0
        while c == 0:
            c = rng.randint(-(2**31), 2**31)
        return Fraction(c)

    def __str__(self):
        return f"F_{self.p}" if self.p else "Q"
