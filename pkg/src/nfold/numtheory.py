"""Trial-division factorization, totients, primitive roots."""
from __future__ import annotations

from dataclasses import dataclass

FACTOR_BOUND = 10**9


class UnsupportedInputError(ValueError):
    """Integer outside the trial-division range."""


@dataclass(frozen=True)
class Factorization:
    m: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def largest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def chain(self) -> list[int]:
        """Prime factors with multiplicity, ascending."""
        return [p for p, e in self.factors for _ in range(e)]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(m: int) -> Factorization:
    if not 1 <= m <= FACTOR_BOUND:
        raise UnsupportedInputError(f"m={m} outside 1..{FACTOR_BOUND}")
    n = m
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return Factorization(m, tuple(out))


def euler_phi(m: int) -> int:
    phi = m
    for p, _ in factorize(m).factors:
        phi -= phi // p
    return phi


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def primitive_root_mod(p: int) -> int:
    """Smallest generator of the multiplicative group mod an odd prime ``p``."""
    if p == 2:
        return 1
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    qs = factorize(p - 1).primes
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable for prime p")
