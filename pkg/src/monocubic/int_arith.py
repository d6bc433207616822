"""Exact integer substrate: factorization, k^2*m structure, cubic residues, sieves."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

from sympy import factorint, integer_nthroot, isprime

from .errors import BadModulus, CeilingExceeded, InvalidInput, NotCubeFree

DEFAULT_CEILING = 2**64

Factorization = list[tuple[int, int]]

is_prime = isprime


class Mod9(enum.Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    NEITHER = "0"

    @classmethod
    def of(cls, n: int) -> Mod9:
        r = n % 9
        if r == 1:
            return cls.PLUS_ONE
        if r == 8:
            return cls.MINUS_ONE
        return cls.NEITHER


def factor(n: int, ceiling: int = DEFAULT_CEILING) -> Factorization:
    """Prime factorization of ``n`` as ascending ``(prime, exponent)`` pairs.

    Raises CeilingExceeded above ``ceiling`` so callers can switch to a
    cheaper square-free test instead of stalling on a hard composite.
    """
    if n < 1:
        raise InvalidInput(f"factor expects n >= 1, got {n}")
    if n > ceiling:
        raise CeilingExceeded(f"{n} exceeds factorization ceiling {ceiling}")
    return sorted(factorint(n).items())


def is_square_free(n: int, ceiling: int = DEFAULT_CEILING) -> bool:
    return all(e == 1 for _, e in factor(n, ceiling))


@dataclass(frozen=True)
class CubeFreeInt:
    """A cube-free n > 1 written as n = k^2 * m with k, m square-free."""

    n: int
    k: int
    m: int
    mod9: Mod9

    def __post_init__(self):
        if self.k * self.k * self.m != self.n:
            raise InvalidInput(f"{self.n} != {self.k}^2 * {self.m}")
        if self.n < 2:
            raise InvalidInput("a pure cubic field needs n >= 2")
        if math.gcd(self.k, self.m) != 1 or not (is_square_free(self.k) and is_square_free(self.m)):
            raise InvalidInput(f"k={self.k}, m={self.m} must be coprime and square-free")
        if self.mod9 is not Mod9.of(self.n):
            raise InvalidInput("mod9 class does not match n")

    @classmethod
    def from_parts(cls, k: int, m: int) -> CubeFreeInt:
        n = k * k * m
        return cls(n, k, m, Mod9.of(n))


def cube_free_decompose(n: int) -> CubeFreeInt:
    if n < 2:
        raise InvalidInput(f"cube_free_decompose expects n >= 2, got {n}")
    k = m = 1
    for p, e in factor(n):
        if e >= 3:
            raise NotCubeFree(f"{p}^3 divides {n}")
        if e == 2:
            k *= p
        else:
            m *= p
    return CubeFreeInt(n, k, m, Mod9.of(n))


def is_cube_mod_p(x: int, p: int) -> bool:
    """Euler-criterion cubic residue test for a prime p != 3 not dividing x."""
    if p == 3:
        raise BadModulus("cubic residue test is undefined for p = 3")
    if x % p == 0:
        raise BadModulus(f"{p} divides {x}")
    if p % 3 != 1:
        return True
    return pow(x, (p - 1) // 3, p) == 1


def icbrt(x: int) -> int | None:
    """Exact signed integer cube root, or None if ``x`` is not a cube."""
    r, exact = integer_nthroot(abs(x), 3)
    if not exact:
        return None
    return -int(r) if x < 0 else int(r)


def is_rational_cube(num: int, den: int) -> bool:
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return icbrt(num) is not None and icbrt(den) is not None


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def squarefree_segments(n: int, block: int = 1 << 16) -> Iterator[tuple[int, bytearray]]:
    """Yield ``(lo, flags)`` blocks covering [1, n]; ``flags[i]`` marks lo+i square-free."""
    small = primes_up_to(math.isqrt(n))
    lo = 1
    while lo <= n:
        hi = min(n, lo + block - 1)
        flags = bytearray([1]) * (hi - lo + 1)
        for p in small:
            sq = p * p
            if sq > hi:
                break
            start = -(-lo // sq) * sq
            flags[start - lo :: sq] = bytes(len(range(start, hi + 1, sq)))
        yield lo, flags
        lo = hi + 1


def squarefree_up_to(n: int) -> Iterator[int]:
    for lo, flags in squarefree_segments(n):
        for i, flag in enumerate(flags):
            if flag:
                yield lo + i

