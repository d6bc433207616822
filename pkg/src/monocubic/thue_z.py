"""Height-bounded decision of kX^3 - mY^3 = c with local-obstruction certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from sympy.ntheory.residue_ntheory import nthroot_mod

from . import cubic_field_z
from .errors import InternalError, InvalidInput
from .int_arith import CubeFreeInt, factor, icbrt, is_cube_mod_p, is_square_free


@dataclass(frozen=True)
class Monogenic:
    x: int
    y: int
    tag = "MONOGENIC"


@dataclass(frozen=True)
class NotMonogenic:
    modulus: int
    tag = "NOT_MONOGENIC"


@dataclass(frozen=True)
class Undetermined:
    height: int
    tag = "UNDETERMINED"


VerdictZ = Union[Monogenic, NotMonogenic, Undetermined]


@dataclass(frozen=True)
class FixedHeight:
    height: int

    def __post_init__(self):
        if self.height < 1:
            raise InvalidInput("search height must be >= 1")

    def for_m(self, m: int) -> int:
        return self.height


@dataclass(frozen=True)
class AbcHeight:
    """|X| <= ceil(constant * m^(2/3 + delta)), the ABC-conditional size of a solution."""

    delta: Fraction = Fraction(1, 10)
    constant: int = 4

    def __post_init__(self):
        if not 0 < self.delta < Fraction(1, 4):
            raise InvalidInput("delta must lie in (0, 1/4)")

    def for_m(self, m: int) -> int:
        return max(1, math.ceil(self.constant * m ** (2 / 3 + float(self.delta))))


@dataclass(frozen=True)
class SearchConfig:
    height_policy: FixedHeight | AbcHeight = field(default_factory=AbcHeight)
    obstruction_prime_bound: int = 10**7
    extra_moduli: tuple[int, ...] = (9, 27, 7, 13, 19)


def has_solution_mod(a: int, m: int, b: int, modulus: int) -> bool:
    """Exhaustively decide whether aX^3 - mY^3 = b has a solution modulo ``modulus``."""
    cubes = {pow(y, 3, modulus) for y in range(modulus)}
    m_values = {m * c % modulus for c in cubes}
    return any((a * c - b) % modulus in m_values for c in cubes)


def local_obstruction(a: int, b: int, m: int, cfg: SearchConfig | None = None) -> int | None:
    """A modulus M with aX^3 - mY^3 = b unsolvable mod M, or None.

    Primes p | m reduce the equation to a*X^3 = b mod p, so any such p with
    b/a a non-cube is a certificate. The extra moduli are then tried by
    brute-force residue enumeration.
    """
    cfg = cfg or SearchConfig()
    for p, _ in factor(m):
        if p > cfg.obstruction_prime_bound:
            break
        if p == 3 or (a * b) % p == 0:
            continue
        if not is_cube_mod_p(b * pow(a, -1, p), p):
            return p
    for modulus in cfg.extra_moduli:
        if not has_solution_mod(a, m, b, modulus):
            return modulus
    return None


def _roots_mod_prime(a: int, b: int, p: int) -> list[int]:
    """All x mod p with a*x^3 = b (mod p)."""
    a, b = a % p, b % p
    if a == 0:
        return list(range(p)) if b == 0 else []
    if b == 0:
        return [0]
    if p <= 3:
        return [x for x in range(p) if (a * x**3 - b) % p == 0]
    return sorted(nthroot_mod(b * pow(a, -1, p), 3, p, all_roots=True) or [])


def cube_root_classes(a: int, b: int, m: int) -> list[int] | None:
    """Residues x mod m with a*x^3 = b (mod m) for square-free m; None if m is not square-free.

    At most 3^omega(m) classes: CRT over the primes of m.
    """
    fac = factor(m)
    if any(e > 1 for _, e in fac):
        return None
    classes, modulus = [0], 1
    for p, _ in fac:
        roots = _roots_mod_prime(a, b, p)
        if not roots:
            return []
        inv = pow(modulus, -1, p)
        classes = [c + modulus * ((r - c) * inv % p) for c in classes for r in roots]
        modulus *= p
    return classes


def _scan_key(x: int) -> tuple[int, int]:
    return (abs(x), x < 0)


def _witness_for(a: int, m: int, b: int, x: int) -> tuple[int, int] | None:
    rest = a * x**3 - b
    if rest % m:
        return None
    y = icbrt(rest // m)
    return None if y is None else (x, y)


def bounded_search(a: int, m: int, b: int, height: int) -> tuple[int, int] | None:
    """First solution of aX^3 - mY^3 = b with |X| <= height in the order 0, 1, -1, 2, -2, ...

    Only X with a*X^3 = b (mod m) can work, so when m is square-free the
    scan visits just the CRT-assembled cube-root classes in [-height, height].
    """
    if a < 1 or m < 1:
        raise InvalidInput("bounded_search needs a, m >= 1")
    classes = cube_root_classes(a, b, m)
    if classes is None or m == 1:
        candidates = range(-height, height + 1)
    else:
        candidates = [
            x
            for c in classes
            for x in range(c - ((c + height) // m) * m, height + 1, m)
        ]
    for x in sorted(candidates, key=_scan_key):
        hit = _witness_for(a, m, b, x)
        if hit is not None:
            return hit
    return None


def bounded_search_bruteforce(a: int, m: int, b: int, height: int) -> tuple[int, int] | None:
    """Reference scan over every X; used as the oracle for ``bounded_search``."""
    for x in sorted(range(-height, height + 1), key=_scan_key):
        hit = _witness_for(a, m, b, x)
        if hit is not None:
            return hit
    return None


def decide_monogenic(k: int, m: int, cfg: SearchConfig | None = None) -> VerdictZ:
    cfg = cfg or SearchConfig()
    if k < 1 or m < 1 or math.gcd(k, m) != 1 or not (is_square_free(k) and is_square_free(m)):
        raise InvalidInput(f"k={k}, m={m} must be coprime square-free positive integers")
    field_ = CubeFreeInt.from_parts(k, m)
    c = cubic_field_z.thue_target(field_)
    modulus = local_obstruction(k, c, m, cfg)
    if modulus is not None:
        return NotMonogenic(modulus)
    height = cfg.height_policy.for_m(m)
    hit = bounded_search(k, m, c, height)
    if hit is None:
        return Undetermined(height)
    gen = cubic_field_z.theta_from_solution(field_, *hit)
    if not cubic_field_z.verify_generator(field_, gen):
        raise InternalError(f"witness {hit} for k={k}, m={m} fails the index-form check")
    return Monogenic(*hit)
