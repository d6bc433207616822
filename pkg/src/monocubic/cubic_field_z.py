"""Pure cubic number fields Q(a), a^3 = n: integral bases, index forms, generators.

Everything here is exact (``fractions.Fraction``); the index form must tell
+-1 apart from nearby rationals, so floating point never enters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import FormulaMismatch, InternalSignError, NonIntegralU, NotASolution
from .int_arith import CubeFreeInt, Mod9

Matrix = list[list[Fraction]]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    size = len(a)
    sign = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, size):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, size):
                    a[r][c] -= f * a[col][c]
    out = Fraction(sign)
    for i in range(size):
        out *= a[i][i]
    return out


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``rows @ x = rhs`` exactly for a non-singular square system."""
    size = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[-1] for row in a]


@dataclass(frozen=True)
class FieldElementZ:
    """c0 + c1*a + c2*a^2 in Q(a) with a^3 = n."""

    n: int
    coords: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def of(cls, n: int, c0=0, c1=0, c2=0) -> FieldElementZ:
        return cls(n, (Fraction(c0), Fraction(c1), Fraction(c2)))

    @classmethod
    def alpha(cls, n: int) -> FieldElementZ:
        return cls.of(n, 0, 1, 0)

    def _coerce(self, other) -> FieldElementZ:
        if isinstance(other, FieldElementZ):
            if other.n != self.n:
                raise ValueError("elements of different fields")
            return other
        return FieldElementZ.of(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElementZ(self.n, tuple(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElementZ(self.n, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a0, a1, a2 = self.coords
        b0, b1, b2 = o.coords
        n = self.n
        return FieldElementZ(
            n,
            (
                a0 * b0 + n * (a1 * b2 + a2 * b1),
                a0 * b1 + a1 * b0 + n * a2 * b2,
                a0 * b2 + a1 * b1 + a2 * b0,
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return FieldElementZ(self.n, tuple(x / s for x in self.coords))

    def __pow__(self, e: int):
        out = FieldElementZ.of(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def multiplication_matrix(self) -> Matrix:
        """Columns are the power-basis coordinates of x*1, x*a, x*a^2."""
        a = FieldElementZ.alpha(self.n)
        cols = [self.coords, (self * a).coords, (self * a * a).coords]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def __str__(self):
        return format_element(self)


def format_element(x: FieldElementZ, var: str = "a") -> str:
    """Render as ``(num)/den`` with integer numerator coefficients, e.g. ``(1+a+a^2)/3``."""
    den = 1
    for c in x.coords:
        den = den * c.denominator // _gcd(den, c.denominator)
    nums = [int(c * den) for c in x.coords]
    terms = []
    for power, c in enumerate(nums):
        if c == 0:
            continue
        mono = {0: "", 1: var, 2: f"{var}^2"}[power]
        if power == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    text += "".join(s + b for s, b in terms[1:])
    if den == 1:
        return text
    if len(terms) > 1:
        text = f"({text})"
    return f"{text}/{den}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def char_poly(field: CubeFreeInt, x: FieldElementZ) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Characteristic polynomial of x, lowest degree first: (c0, c1, c2, 1)."""
    if x.n != field.n:
        raise ValueError("element does not belong to this field")
    m = x.multiplication_matrix()
    trace = m[0][0] + m[1][1] + m[2][2]
    minors = (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1]
    )
    return (-det(m), minors, -trace, Fraction(1))


def is_algebraic_integer(field: CubeFreeInt, x: FieldElementZ) -> bool:
    return all(c.denominator == 1 for c in char_poly(field, x))


class Branch(enum.Enum):
    GENERIC = "generic"
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"


@dataclass(frozen=True)
class IntegralBasisZ:
    field: CubeFreeInt
    elements: tuple[FieldElementZ, FieldElementZ, FieldElementZ]
    branch: Branch

    def change_matrix(self) -> Matrix:
        """Columns are the power-basis coordinates of e0, e1, e2."""
        return [[self.elements[j].coords[i] for j in range(3)] for i in range(3)]

    def coordinates(self, x: FieldElementZ) -> list[Fraction]:
        return solve(self.change_matrix(), x.coords)

    def __str__(self):
        return ", ".join(format_element(e) for e in self.elements)


def integral_basis(field: CubeFreeInt) -> IntegralBasisZ:
    n, k = field.n, field.k
    one = FieldElementZ.of(n, 1)
    alpha = FieldElementZ.alpha(n)
    if field.mod9 is Mod9.NEITHER:
        third = FieldElementZ.of(n, 0, 0, Fraction(1, k))
        branch = Branch.GENERIC
    else:
        sign = 1 if field.mod9 is Mod9.PLUS_ONE else -1
        third = FieldElementZ.of(n, k * k, sign * k * k, 1) / (3 * k)
        branch = Branch.PLUS_ONE if sign == 1 else Branch.MINUS_ONE
    if not is_algebraic_integer(field, third):
        raise InternalSignError(f"{third} is not integral in Q(cbrt({n}))")
    return IntegralBasisZ(field, (one, alpha, third), branch)


def closed_form_index(field: CubeFreeInt, u: int, v: int) -> Fraction:
    k, m = field.k, field.m
    if field.mod9 is Mod9.NEITHER:
        return Fraction(k * u**3 - m * v**3)
    s = 1 if field.mod9 is Mod9.PLUS_ONE else -1
    return Fraction(k * (3 * u + s * k * v) ** 3 - m * v**3, 9)


def index_form_det(field: CubeFreeInt, u: int, v: int, basis: IntegralBasisZ | None = None) -> Fraction:
    """Determinant of (1, theta, theta^2) in the integral basis, theta = u*e1 + v*e2.

    Computed by exact linear algebra and cross-checked against the closed
    cubic form; a disagreement raises FormulaMismatch.
    """
    basis = basis or integral_basis(field)
    _, e1, e2 = basis.elements
    theta = u * e1 + v * e2
    cols = [basis.coordinates(x) for x in (FieldElementZ.of(field.n, 1), theta, theta * theta)]
    value = det([[cols[j][i] for j in range(3)] for i in range(3)])
    expected = closed_form_index(field, u, v)
    if value != expected:
        raise FormulaMismatch(f"n={field.n}, (u,v)=({u},{v}): det {value} != closed form {expected}")
    return value


@dataclass(frozen=True)
class GeneratorZ:
    u: int
    v: int
    theta: FieldElementZ


def thue_target(field: CubeFreeInt) -> int:
    """Right-hand side c of kX^3 - mY^3 = c that encodes monogenicity."""
    return 1 if field.mod9 is Mod9.NEITHER else 9


def theta_from_solution(field: CubeFreeInt, x0: int, y0: int) -> GeneratorZ:
    k, m = field.k, field.m
    c = thue_target(field)
    if k * x0**3 - m * y0**3 != c:
        raise NotASolution(f"{k}*{x0}^3 - {m}*{y0}^3 != {c}")
    if field.mod9 is Mod9.NEITHER:
        u = x0
    else:
        shifted = x0 - k * y0 if field.mod9 is Mod9.PLUS_ONE else x0 + k * y0
        if shifted % 3:
            raise NonIntegralU(f"({x0} -+ {k}*{y0})/3 is not an integer")
        u = shifted // 3
    basis = integral_basis(field)
    return GeneratorZ(u, y0, u * basis.elements[1] + y0 * basis.elements[2])


def verify_generator(field: CubeFreeInt, gen: GeneratorZ) -> bool:
    return abs(index_form_det(field, gen.u, gen.v)) == 1
