"""Pure cubic function fields F_q(t, cbrt(g^2 h)).

The field is monogenic iff gX^3 - hY^3 is a non-zero constant for some X, Y in
F_q[t]. Mason-Stothers bounds deg X and deg Y for a normalized solution, so a
finite search decides the question completely.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import InternalBranchError, InvalidInput, NotASolution
from .ff_arith import (
    GF,
    FqPoly,
    cube_free_decompose_poly,
    divrem,
    factor_poly,
    format_poly,
    gcd,
    inverse_mod,
    is_square_free_poly,
    polys_of_degree,
    polys_up_to,
    squarefree_decomposition,
)

BRUTE_FORCE_RESIDUE_FIELD = 4096


@dataclass(frozen=True)
class PureCubicFF:
    F: GF
    g: FqPoly
    h: FqPoly

    def __post_init__(self):
        if self.h.is_zero() or self.g.is_zero():
            raise InvalidInput("g and h must be non-zero")
        if not self.g.is_monic():
            raise InvalidInput("g must be monic")
        if not (is_square_free_poly(self.g) and is_square_free_poly(self.h)):
            raise InvalidInput("g and h must be square-free")
        if gcd(self.g, self.h).degree > 0:
            raise InvalidInput("g and h must be coprime")

    @classmethod
    def from_f(cls, f: FqPoly) -> PureCubicFF:
        g, h = cube_free_decompose_poly(f)
        return cls(f.F, g, h)

    @property
    def f(self) -> FqPoly:
        return self.g * self.g * self.h


@dataclass(frozen=True)
class IntegralBasisFF:
    """Basis elements as (numerators over (1, a, a^2), common denominator)."""

    field: PureCubicFF
    elements: tuple[tuple[tuple[FqPoly, FqPoly, FqPoly], FqPoly], ...]

    def determinant(self) -> tuple[FqPoly, FqPoly]:
        """Basis-change determinant from the power basis as (numerator, denominator)."""
        num = FqPoly.const(self.field.F, 1)
        den = FqPoly.const(self.field.F, 1)
        for i, (coords, d) in enumerate(self.elements):
            num = num * coords[i]
            den = den * d
        return num, den

    def __str__(self):
        parts = []
        for coords, den in self.elements:
            terms = []
            for power, c in enumerate(coords):
                if c.is_zero():
                    continue
                mono = {0: "", 1: "a", 2: "a^2"}[power]
                if c == 1 and mono:
                    terms.append(mono)
                elif not mono:
                    terms.append(format_poly(c))
                else:
                    terms.append(f"({format_poly(c)})*{mono}")
            body = "+".join(terms)
            if den == 1:
                parts.append(body)
            else:
                den_s = format_poly(den)
                parts.append(f"{body}/{den_s}" if den.degree <= 1 and len([x for x in den.c if x]) == 1
                             else f"{body}/({den_s})")
        return ", ".join(parts)


def integral_basis_ff(field: PureCubicFF) -> IntegralBasisFF:
    F = field.F
    one, zero = FqPoly.const(F, 1), FqPoly(F)
    return IntegralBasisFF(
        field,
        (
            ((one, zero, zero), one),
            ((zero, one, zero), one),
            ((zero, zero, one), field.g),
        ),
    )


@dataclass(frozen=True)
class DegreeBounds:
    bx: int
    by: int


def degree_bounds(deg_g: int, deg_h: int) -> DegreeBounds:
    """Mason-Stothers caps on (deg X, deg Y) for a normalized solution.

    From 2 deg Y <= deg g + deg X - 1 and 2 deg X <= deg h + deg Y - 1.
    """
    if deg_g < 1:
        raise InvalidInput("degree bounds need deg g >= 1")
    return DegreeBounds(max(0, (2 * deg_h + deg_g - 3) // 3), max(0, (deg_h + 2 * deg_g - 3) // 3))


@dataclass(frozen=True)
class MonogenicFF:
    x: FqPoly
    y: FqPoly
    alpha: int
    tag = "MONOGENIC"


@dataclass(frozen=True)
class NotMonogenicFF:
    tag = "NOT_MONOGENIC"


FFVerdict = Union[MonogenicFF, NotMonogenicFF]


def is_witness(field: PureCubicFF, x: FqPoly, y: FqPoly, alpha: int | None = None) -> bool:
    d = field.g * x**3 - field.h * y**3
    return d.degree == 0 and (alpha is None or d.lc == alpha)


def poly_cube_root(Q: FqPoly) -> FqPoly | None:
    """Some X with X^3 = Q, or None. Works through the reversed power series (3 is a unit)."""
    F = Q.F
    if Q.is_zero():
        return Q
    n = Q.degree
    if n % 3:
        return None
    roots = F.cube_roots(Q.lc)
    if not roots:
        return None
    d = n // 3
    inv_lc = F.inv(Q.lc)
    target = [F.mul(c, inv_lc) for c in reversed(Q.c)]
    inv3 = F.inv(F.from_int(3))
    xs = [1]
    for k in range(1, d + 1):
        partial = FqPoly(F, xs)
        cube = (partial * partial * partial).c
        have = cube[k] if k < len(cube) else 0
        xs.append(F.mul(F.sub(target[k], have), inv3))
    X = FqPoly(F, list(reversed(xs))).scale(roots[0])
    return X if X * X * X == Q else None


def _monic_up_to(F: GF, max_deg: int) -> Iterator[FqPoly]:
    for d in range(0, max_deg + 1):
        yield from polys_of_degree(F, d, monic=True)


def _trivial_verdict(field: PureCubicFF) -> FFVerdict | None:
    F = field.F
    if field.g.degree == 0:
        return MonogenicFF(FqPoly.const(F, 1), FqPoly(F), 1)
    if field.h.degree == 0:
        return MonogenicFF(FqPoly(F), FqPoly.const(F, 1), F.neg(field.h.lc))
    return None


def decide_monogenic_ff(field: PureCubicFF, method: str = "search") -> FFVerdict:
    """Complete decision of monogenicity.

    ``method="search"`` walks monic Y within the bound and every alpha, and
    extracts X = cbrt((hY^3 + alpha)/g) exactly. ``method="brute"`` tries
    every X of degree <= Bx against every monic Y of degree <= By.
    """
    trivial = _trivial_verdict(field)
    if trivial is not None:
        return trivial
    F, g, h = field.F, field.g, field.h
    bounds = degree_bounds(g.degree, h.degree)
    if method == "brute":
        xs = [(x, g * x**3) for x in polys_up_to(F, bounds.bx)]
        for y in _monic_up_to(F, bounds.by):
            hy3 = h * y**3
            for x, gx3 in xs:
                diff = gx3 - hy3
                if diff.degree == 0:
                    return MonogenicFF(x, y, diff.lc)
        return NotMonogenicFF()
    if method != "search":
        raise InvalidInput(f"unknown method {method!r}")
    for y in _monic_up_to(F, bounds.by):
        hy3 = h * y**3
        if (hy3.degree - g.degree) % 3:
            continue
        for alpha in F.units():
            quo, rem = divrem(hy3 + alpha, g)
            if rem:
                continue
            x = poly_cube_root(quo)
            if x is not None and x.degree <= bounds.bx:
                return MonogenicFF(x, y, alpha)
    return NotMonogenicFF()


def normalize_solution(field: PureCubicFF, x: FqPoly, y: FqPoly) -> tuple[FqPoly, FqPoly]:
    """Replace a solution whose two terms are both p-th powers by one where a derivative survives."""
    g, h = field.g, field.h
    if g.degree < 1 or h.degree < 1:
        raise InvalidInput("normalization needs non-constant g and h")
    if not is_witness(field, x, y):
        raise NotASolution("g*X^3 - h*Y^3 is not a non-zero constant")
    a, b = g * x**3, h * y**3
    if a.derivative() or b.derivative():
        return x, y
    while not a.derivative() and not b.derivative():
        a, b = a.pth_root(), b.pth_root()
    q1, r1 = divrem(a, g)
    q2, r2 = divrem(b, h)
    x1 = poly_cube_root(q1) if not r1 else None
    y1 = poly_cube_root(q2) if not r2 else None
    if x1 is None or y1 is None:
        raise InternalBranchError("p-th root of the solution is not of the form (g X^3, h Y^3)")
    if not is_witness(field, x1, y1):
        raise InternalBranchError("normalized pair is not a solution")
    return x1, y1


# congruence backend ----------------------------------------------------------

def _residue_elements(F: GF, d: int) -> Iterator[FqPoly]:
    yield from polys_up_to(F, d - 1)


def cube_roots_mod(a: FqPoly, P: FqPoly, brute_limit: int = BRUTE_FORCE_RESIDUE_FIELD) -> list[FqPoly]:
    """All x in F_q[t]/(P) with x^3 = a, P monic irreducible; sorted by coefficients."""
    F = P.F
    d = P.degree
    size = F.q**d
    a = a % P
    if a.is_zero():
        return [a]
    if size <= brute_limit:
        roots = [x for x in _residue_elements(F, d) if (x * x * x) % P == a]
    elif size % 3 == 2:
        roots = [a.powmod((2 * size - 1) // 3, P)]
    else:
        roots = _cube_roots_sylow(a, P, size)
    return sorted(roots, key=lambda r: r.to_int())


def _cube_roots_sylow(a: FqPoly, P: FqPoly, size: int) -> list[FqPoly]:
    """Cube roots in a residue field with size = 1 mod 3, Tonelli-Shanks style."""
    F = P.F
    one = FqPoly.const(F, 1)
    if a.powmod((size - 1) // 3, P) != one:
        return []
    s, t = 0, size - 1
    while t % 3 == 0:
        s, t = s + 1, t // 3
    z = next(
        z for z in (FqPoly.from_int(F, i) for i in range(2, size))
        if z % P and z.powmod((size - 1) // 3, P) != one
    )
    w = z.powmod(t, P)
    u = pow(3, -1, t) if t > 1 else 0
    x0 = a.powmod(u, P)
    target = a.powmod((1 - 3 * u) % (size - 1), P)
    gamma = w.powmod(3 ** (s - 1), P)
    gamma_pows = [one, gamma % P, (gamma * gamma) % P]
    w_inv = inverse_mod(w, P)
    e = 0
    for i in range(s):
        probe = (w_inv.powmod(e, P) * target % P).powmod(3 ** (s - 1 - i), P)
        e += gamma_pows.index(probe) * 3**i
    if e % 3:
        raise InternalBranchError("cube in F has a non-cube 3-part")
    x = (x0 * w.powmod(e // 3, P)) % P
    return [(x * zeta) % P for zeta in gamma_pows]


def _hensel_lift(g: FqPoly, alpha: int, x: FqPoly, modulus: FqPoly) -> FqPoly:
    """Lift a simple root of g X^3 - alpha to the given prime-power modulus (Newton iteration)."""
    F = g.F
    three = F.from_int(3)
    for _ in range(64):
        value = (g * x**3 - alpha) % modulus
        if value.is_zero():
            return x
        slope = (g * x * x).scale(three) % modulus
        x = (x - value * inverse_mod(slope, modulus)) % modulus
    raise InternalBranchError("Hensel lifting failed to converge")


def congruence_solver_ff(g: FqPoly, alpha: int, Y: FqPoly, seed: int = 0) -> list[FqPoly]:
    """Residue classes X mod Y^3 with g X^3 = alpha (mod Y^3); at most 3^omega(Y) of them."""
    F = g.F
    if Y.is_zero() or not Y.is_monic():
        raise InvalidInput("Y must be monic")
    if alpha == 0:
        raise InvalidInput("alpha must be non-zero")
    if Y.degree == 0:
        return [FqPoly(F)]
    if gcd(Y, g).degree > 0:
        return []
    classes, modulus = [FqPoly(F)], FqPoly.const(F, 1)
    for P, n in factor_poly(Y, seed):
        target = (inverse_mod(g % P, P) * alpha) % P
        prime_power = P ** (3 * n)
        lifted = [_hensel_lift(g, alpha, r, prime_power) for r in cube_roots_mod(target, P)]
        if not lifted:
            return []
        inv = inverse_mod(modulus % prime_power, prime_power)
        classes = [
            (c + modulus * (((r - c) * inv) % prime_power)) for c in classes for r in lifted
        ]
        modulus = modulus * prime_power
    return sorted((c % modulus for c in classes), key=lambda c: c.to_int())


def decide_monogenic_ff_congruence(field: PureCubicFF, seed: int = 0) -> FFVerdict:
    """Same decision as ``decide_monogenic_ff``, but X comes from the congruence classes mod Y^3."""
    trivial = _trivial_verdict(field)
    if trivial is not None:
        return trivial
    F, g, h = field.F, field.g, field.h
    bounds = degree_bounds(g.degree, h.degree)
    for y in _monic_up_to(F, bounds.by):
        span = h.degree + 3 * y.degree - g.degree
        if span % 3 or span // 3 > bounds.bx:
            continue
        dx = span // 3
        y3 = y**3
        for alpha in F.units():
            for x0 in congruence_solver_ff(g, alpha, y, seed):
                free = dx - 3 * y.degree
                shifts = polys_up_to(F, free) if free >= 0 else [FqPoly(F)]
                for z in shifts:
                    x = x0 + y3 * z
                    if x.degree == dx and g * x**3 - h * y3 == alpha:
                        return MonogenicFF(x, y, alpha)
    return NotMonogenicFF()


# oracles ---------------------------------------------------------------------

def monogenic_table_bruteforce(F: GF, g: FqPoly, max_deg_h: int) -> dict[tuple, tuple]:
    """Every eligible non-constant h (deg <= max_deg_h) hit by some in-bounds (X, Y, alpha).

    Runs over the whole box of X, monic Y and alpha once, solving for h, so it
    is an exhaustive search that shares no code path with the per-h deciders.
    Keys are coefficient tuples of h; values are the first (X, Y, alpha) found.
    """
    top = degree_bounds(g.degree, max_deg_h)
    found: dict[tuple, tuple] = {}
    ys = [(y, y**3) for y in _monic_up_to(F, top.by)]
    for x in polys_up_to(F, top.bx):
        gx3 = g * x**3
        for alpha in F.units():
            lhs = gx3 - alpha
            for y, y3 in ys:
                h, rem = divrem(lhs, y3)
                if rem or h.degree < 1 or h.degree > max_deg_h or h.c in found:
                    continue
                b = degree_bounds(g.degree, h.degree)
                if x.degree > b.bx or y.degree > b.by:
                    continue
                if is_square_free_poly(h) and gcd(g, h).degree == 0:
                    found[h.c] = (x, y, alpha)
    return found


def extended_search(F: GF, g: FqPoly, max_deg_x: int, max_deg_h: int) -> dict[tuple, tuple]:
    """All eligible non-constant h (deg <= max_deg_h) solvable with deg X <= max_deg_x.

    Ignores the Mason-Stothers caps. For each X and alpha, gX^3 - alpha = h Y^3
    with h square-free forces Y to be the cube part of its square-free
    decomposition, so no congruence solving or cube roots are involved.
    """
    found: dict[tuple, tuple] = {}
    for x in polys_up_to(F, max_deg_x):
        gx3 = g * x**3
        for alpha in F.units():
            lhs = gx3 - alpha
            if lhs.degree < 1:
                continue
            y = FqPoly.const(F, 1)
            for fac, mult in squarefree_decomposition(lhs):
                y = y * fac ** (mult // 3)
            h = lhs // y**3
            if not 1 <= h.degree <= max_deg_h or y.degree > max_deg_x or h.c in found:
                continue
            if is_square_free_poly(h) and gcd(g, h).degree == 0:
                found[h.c] = (x, y, alpha)
    return found


def unit_scale(F: GF, witness: MonogenicFF, u: int) -> MonogenicFF:
    return MonogenicFF(witness.x.scale(u), witness.y.scale(u), F.mul(F.pow(u, 3), witness.alpha))


def random_field(F: GF, deg_g: int, deg_h: int, rng: random.Random) -> PureCubicFF:
    """A random valid field with the given degrees (rejection sampling)."""
    while True:
        g = FqPoly(F, [rng.randrange(F.q) for _ in range(deg_g)] + [1])
        h = FqPoly(F, [rng.randrange(F.q) for _ in range(deg_h)] + [rng.randrange(1, F.q)])
        try:
            return PureCubicFF(F, g, h)
        except InvalidInput:
            continue
