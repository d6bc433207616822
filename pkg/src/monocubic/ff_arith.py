"""Arithmetic in F_q and F_q[t] for q = p^e, p != 3.

Field elements are ints in [0, q). For e > 1 the base-p digits of an element
are its coefficients over the fixed irreducible ``modulus``, so the prime
subfield is exactly {0, ..., p-1}. Polynomials are immutable coefficient
tuples, lowest degree first, with no trailing zeros; the zero polynomial has
degree -inf.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import re
from typing import Iterator, Sequence

from sympy import isprime

from .errors import DivisionByZeroPoly, InvalidInput, NotCubeFree, PreconditionViolated

ZERO_DEGREE = -math.inf

MAX_TABLE_Q = 4096


def _fp_poly_mulmod(a: list[int], b: list[int], mod: Sequence[int], p: int) -> list[int]:
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] += x * y
    e = len(mod) - 1
    for i in range(len(res) - 1, e - 1, -1):
        c = res[i] % p
        if c:
            for j in range(e + 1):
                res[i - e + j] -= c * mod[j]
    res = [c % p for c in res[:e]]
    return res + [0] * (e - len(res))


def _fp_is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= e/2 over F_p."""
    e = len(mod) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(mod)
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i] % p
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * div[j]) % p
            if not any(x % p for x in rem[:d]):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p."""
    for tail in itertools.product(range(p), repeat=e):
        mod = tuple(reversed(tail)) + (1,)
        if mod[0] and _fp_is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field F_q with q = p^e, p != 3.

    ``allow_char_3`` lifts the characteristic restriction for callers that
    only need polynomial arithmetic (the omega sums), never cube roots.
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None, allow_char_3: bool = False):
        if not isprime(p):
            raise InvalidInput(f"{p} is not prime")
        if p == 3 and not allow_char_3:
            raise InvalidInput("characteristic 3 is excluded")
        if e < 1:
            raise InvalidInput("extension degree must be >= 1")
        self.p, self.e, self.q = p, e, p**e
        if e == 1:
            self.modulus = (0, 1)
        else:
            if self.q > MAX_TABLE_Q:
                raise InvalidInput(f"q={self.q} exceeds the table limit {MAX_TABLE_Q}")
            mod = tuple(modulus) if modulus is not None else default_modulus(p, e)
            if len(mod) != e + 1 or mod[-1] != 1 or not _fp_is_irreducible(mod, p):
                raise InvalidInput(f"{mod} is not a monic irreducible of degree {e}")
            self.modulus = mod
            self._build_tables()
        self._cube_roots: dict[int, list[int]] | None = None

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _from_digits(self, ds: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _build_tables(self):
        q, p = self.q, self.p
        digits = [self._digits(a) for a in range(q)]
        self.add_table = [[self._from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                           for b in range(q)] for a in range(q)]
        self.neg_table = [self._from_digits([(-x) % p for x in digits[a]]) for a in range(q)]
        for g in range(2, q):
            exp = [1]
            cur = [1] + [0] * (self.e - 1)
            for _ in range(q - 2):
                cur = _fp_poly_mulmod(cur, digits[g], self.modulus, p)
                v = self._from_digits(cur)
                if v == 1:
                    break
                exp.append(v)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError("no primitive element")
        log = {v: i for i, v in enumerate(exp)}
        self.mul_table = [[0] * q for _ in range(q)]
        for a in range(1, q):
            for b in range(1, q):
                self.mul_table[a][b] = exp[(log[a] + log[b]) % (q - 1)]
        self.inv_table = [0] + [exp[(-log[a]) % (q - 1)] for a in range(1, q)]

    # element arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p if self.e == 1 else self.add_table[a][b]

    def neg(self, a: int) -> int:
        return (-a) % self.p if self.e == 1 else self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p if self.e == 1 else self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return pow(a, -1, self.p) if self.e == 1 else self.inv_table[a]

    def pow(self, a: int, n: int) -> int:
        if self.e == 1:
            return pow(a, n, self.p)
        out = 1
        if n < 0:
            a, n = self.inv(a), -n
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def from_int(self, n: int) -> int:
        return n % self.p

    def pth_root(self, a: int) -> int:
        """Inverse Frobenius: the unique b with b^p = a."""
        return self.pow(a, self.q // self.p)

    def cube_roots(self, a: int) -> list[int]:
        if self._cube_roots is None:
            table: dict[int, list[int]] = {}
            for x in range(self.q):
                table.setdefault(self.pow(x, 3), []).append(x)
            self._cube_roots = table
        return self._cube_roots.get(a, [])

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (GF, (self.p, self.e, None if self.e == 1 else self.modulus, self.p == 3))

    @property
    def metadata(self) -> dict:
        return {"q": self.q, "p": self.p, "e": self.e, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def field_for(q: int, allow_char_3: bool = False) -> GF:
    """The field with q elements, built once per q with the default modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = round(math.log(q, p))
            if p**e != q:
                raise InvalidInput(f"{q} is not a prime power")
            return GF(p, e, allow_char_3=allow_char_3)
    raise InvalidInput(f"{q} is not a prime power")


class FqPoly:
    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        if F.e == 1:
            c = [x % F.p for x in c]
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)

    @classmethod
    def _raw(cls, F: GF, c: list[int]) -> FqPoly:
        while c and c[-1] == 0:
            c.pop()
        out = object.__new__(cls)
        out.F, out.c = F, tuple(c)
        return out

    @classmethod
    def const(cls, F: GF, a: int) -> FqPoly:
        return cls._raw(F, [a])

    @classmethod
    def t(cls, F: GF) -> FqPoly:
        return cls._raw(F, [0, 1])

    @classmethod
    def parse(cls, F: GF, text: str) -> FqPoly:
        return parse_poly(F, text)

    # structure ------------------------------------------------------------
    @property
    def degree(self) -> int | float:
        return len(self.c) - 1 if self.c else ZERO_DEGREE

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            return 0 <= other < self.F.q and self.c == FqPoly.const(self.F, other).c
        return isinstance(other, FqPoly) and self.c == other.c and self.F == other.F

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"FqPoly(q={self.F.q}, {list(self.c)})"

    def __str__(self):
        return format_poly(self)

    def __bool__(self):
        return bool(self.c)

    # ring operations ------------------------------------------------------
    def _lift(self, other) -> FqPoly:
        if isinstance(other, FqPoly):
            return other
        if isinstance(other, int):
            # ints are element codes, the same encoding as the coefficients
            if not 0 <= other < self.F.q:
                raise InvalidInput(f"{other} is not an element code of F_{self.F.q}")
            return FqPoly.const(self.F, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        F = self.F
        if F.e == 1:
            p = F.p
            out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
        else:
            at = F.add_table
            out = [at[x][y] for x, y in zip(a, b)] + list(a[len(b):])
        return FqPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.F
        if F.e == 1:
            return FqPoly._raw(F, [(-x) % F.p for x in self.c])
        return FqPoly._raw(F, [F.neg_table[x] for x in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not a or not b:
            return FqPoly._raw(self.F, [])
        F = self.F
        res = [0] * (len(a) + len(b) - 1)
        if F.e == 1:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        res[i + j] += x * y
            p = F.p
            return FqPoly._raw(F, [r % p for r in res])
        mt, at = F.mul_table, F.add_table
        for i, x in enumerate(a):
            if x:
                row = mt[x]
                for j, y in enumerate(b):
                    if y:
                        res[i + j] = at[res[i + j]][row[y]]
        return FqPoly._raw(F, res)

    __rmul__ = __mul__

    def scale(self, a: int) -> FqPoly:
        F = self.F
        return FqPoly._raw(F, [F.mul(a, x) for x in self.c])

    def shift(self, n: int) -> FqPoly:
        """Multiply by t^n."""
        return FqPoly._raw(self.F, [0] * n + list(self.c)) if self.c else self

    def __pow__(self, n: int) -> FqPoly:
        out = FqPoly.const(self.F, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other) -> tuple[FqPoly, FqPoly]:
        return divrem(self, self._lift(other))

    def __floordiv__(self, other):
        return divrem(self, self._lift(other))[0]

    def __mod__(self, other):
        return divrem(self, self._lift(other))[1]

    def monic(self) -> FqPoly:
        if not self.c:
            return self
        return self.scale(self.F.inv(self.lc))

    def derivative(self) -> FqPoly:
        F = self.F
        return FqPoly._raw(F, [F.mul(F.from_int(i), x) for i, x in enumerate(self.c)][1:])

    def __call__(self, x: int) -> int:
        F = self.F
        acc = 0
        for coef in reversed(self.c):
            acc = F.add(F.mul(acc, x), coef)
        return acc

    def pth_root(self) -> FqPoly:
        """The polynomial r with r^p = self; requires self to be a p-th power."""
        F, p = self.F, self.F.p
        if any(x for i, x in enumerate(self.c) if i % p):
            raise ValueError("polynomial is not a p-th power")
        return FqPoly._raw(F, [F.pth_root(x) for x in self.c[::p]])

    def powmod(self, n: int, mod: FqPoly) -> FqPoly:
        out = FqPoly.const(self.F, 1) % mod
        base = self % mod
        while n:
            if n & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            n >>= 1
        return out

    def to_int(self) -> int:
        return sum(x * self.F.q**i for i, x in enumerate(self.c))

    @classmethod
    def from_int(cls, F: GF, n: int) -> FqPoly:
        out = []
        while n:
            n, r = divmod(n, F.q)
            out.append(r)
        return cls._raw(F, out)


def divrem(a: FqPoly, b: FqPoly) -> tuple[FqPoly, FqPoly]:
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    F = a.F
    db = len(b.c) - 1
    if len(a.c) - 1 < db:
        return FqPoly._raw(F, []), a
    rem = list(a.c)
    quo = [0] * (len(rem) - db)
    inv_lc = F.inv(b.c[-1])
    bc = b.c
    if F.e == 1:
        p = F.p
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                c = c * inv_lc % p
                quo[i - db] = c
                off = i - db
                for j in range(db + 1):
                    rem[off + j] -= c * bc[j]
        return FqPoly._raw(F, quo), FqPoly._raw(F, [r % p for r in rem[:db]])
    mt, at, nt = F.mul_table, F.add_table, F.neg_table
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            c = mt[c][inv_lc]
            quo[i - db] = c
            nc = nt[c]
            off = i - db
            for j in range(db + 1):
                if bc[j]:
                    rem[off + j] = at[rem[off + j]][mt[nc][bc[j]]]
    return FqPoly._raw(F, quo), FqPoly._raw(F, rem[:db])


def gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, divrem(a, b)[1]
    return a.monic()


def xgcd(a: FqPoly, b: FqPoly) -> tuple[FqPoly, FqPoly, FqPoly]:
    """(g, s, u) with s*a + u*b = g monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = FqPoly.const(F, 1), FqPoly._raw(F, [])
    u0, u1 = FqPoly._raw(F, []), FqPoly.const(F, 1)
    while r1:
        quo, rem = divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        u0, u1 = u1, u0 - quo * u1
    if not r0:
        return r0, s0, u0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def inverse_mod(a: FqPoly, m: FqPoly) -> FqPoly:
    g, s, _ = xgcd(a % m, m)
    if g.degree != 0:
        raise DivisionByZeroPoly("not invertible modulo m")
    return s % m


def derivative(f: FqPoly) -> FqPoly:
    return f.derivative()


# text format ------------------------------------------------------------------

def format_poly(f: FqPoly, var: str = "t") -> str:
    """Human form, highest degree first: ``t^3+t+1``; non-prime-subfield constants as ``{n}``."""
    if f.is_zero():
        return "0"
    terms = []
    for i in range(len(f.c) - 1, -1, -1):
        c = f.c[i]
        if not c:
            continue
        coef = str(c) if c < f.F.p else f"{{{c}}}"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(coef)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{coef}*{mono}")
    return "+".join(terms)


def to_list(f: FqPoly) -> list[int]:
    return list(f.c)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\{\d+\})|([a-zA-Z]+)|(\S))")


def parse_poly(F: GF, text: str) -> FqPoly:
    """Parse ``[c0,c1,...]`` or an expression such as ``t^2*(t+1)`` or ``3t^2-1``."""
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[] ")
        coeffs = [int(x) for x in body.split(",") if x.strip()] if body else []
        if any(not 0 <= c < F.q for c in coeffs) and F.e > 1:
            raise InvalidInput(f"coefficients must lie in [0, {F.q})")
        return FqPoly(F, coeffs)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, elem, name, sym = m.groups()
        if name is not None and name != "t":
            raise InvalidInput(f"unknown symbol {name!r} in {text!r}")
        tokens.append(("num", int(num)) if num else ("elem", int(elem[1:-1])) if elem
                      else ("t", None) if name else (sym, None))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i][0]

    def take(kind=None):
        nonlocal i
        tok = tokens[i]
        if kind and tok[0] != kind:
            raise InvalidInput(f"expected {kind!r} in {text!r}")
        i += 1
        return tok

    def expr():
        acc = term()
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek() in ("*", "num", "elem", "t", "("):
            if peek() == "*":
                take()
            acc = acc * factor()
        return acc

    def factor():
        if peek() == "-":
            take()
            return -factor()
        base = atom()
        if peek() == "^":
            take()
            base = base ** take("num")[1]
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return FqPoly.const(F, F.from_int(val))
        if kind == "elem":
            if not 0 <= val < F.q:
                raise InvalidInput(f"field element {val} out of range")
            return FqPoly.const(F, val)
        if kind == "t":
            return FqPoly.t(F)
        if kind == "(":
            inner = expr()
            take(")")
            return inner
        raise InvalidInput(f"unexpected token {kind!r} in {text!r}")

    out = expr()
    if peek() != "end":
        raise InvalidInput(f"trailing input in {text!r}")
    return out


# enumeration --------------------------------------------------------------

def polys_of_degree(F: GF, d: int, monic: bool = False) -> Iterator[FqPoly]:
    """Every polynomial of exact degree d (d = -1 yields the zero polynomial)."""
    if d < 0:
        yield FqPoly._raw(F, [])
        return
    leads = [1] if monic else range(1, F.q)
    for lead in leads:
        for tail in itertools.product(range(F.q), repeat=d):
            yield FqPoly._raw(F, list(reversed(tail)) + [lead])


def polys_up_to(F: GF, max_deg: int, monic: bool = False, include_zero: bool = True) -> Iterator[FqPoly]:
    if include_zero and not monic:
        yield FqPoly._raw(F, [])
    for d in range(0, max_deg + 1):
        yield from polys_of_degree(F, d, monic)


def random_poly(F: GF, max_deg: int, rng: random.Random, monic: bool = False) -> FqPoly:
    d = rng.randint(0, max_deg)
    c = [rng.randrange(F.q) for _ in range(d)]
    lead = 1 if monic else rng.randrange(1, F.q)
    return FqPoly(F, c + [lead])


# square-free structure -----------------------------------------------------

def squarefree_decomposition(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Monic pairwise-coprime square-free factors with multiplicities: f = lc * prod(g^i).

    Follows the chain through p-th roots, so multiplicities divisible by p are
    reported correctly.
    """
    if f.is_zero():
        raise InvalidInput("square-free decomposition of 0")
    parts: dict[int, FqPoly] = {}
    _sqf(f.monic(), 1, parts)
    return [(parts[i], i) for i in sorted(parts)]


def _sqf(f: FqPoly, mult: int, parts: dict[int, FqPoly]):
    if f.degree <= 0:
        return
    p = f.F.p
    d = f.derivative()
    if d.is_zero():
        _sqf(f.pth_root(), mult * p, parts)
        return
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            key = i * mult
            parts[key] = parts[key] * fac if key in parts else fac
        w, c, i = y, c // y, i + 1
    if c.degree > 0:
        _sqf(c.pth_root(), mult * p, parts)


def is_square_free_poly(f: FqPoly) -> bool:
    if f.is_zero():
        raise InvalidInput("0 is not square-free")
    if f.is_constant():
        return True
    return gcd(f, f.derivative()).degree == 0


def cube_free_decompose_poly(f: FqPoly) -> tuple[FqPoly, FqPoly]:
    """(g, h) with f = g^2 * h, g monic square-free, h square-free carrying lc(f)."""
    if f.is_zero():
        raise InvalidInput("0 has no cube-free decomposition")
    F = f.F
    g = h = FqPoly.const(F, 1)
    for fac, mult in squarefree_decomposition(f):
        if mult >= 3:
            raise NotCubeFree(f"({fac})^{mult} divides {f}")
        if mult == 2:
            g = g * fac
        else:
            h = h * fac
    return g, h.scale(f.lc)


def radical(f: FqPoly) -> FqPoly:
    out = FqPoly.const(f.F, 1)
    for fac, _ in squarefree_decomposition(f):
        out = out * fac
    return out


def radical_degree(f: FqPoly) -> int:
    """Number of distinct roots of f in the algebraic closure."""
    return sum(fac.degree for fac, _ in squarefree_decomposition(f))


def mason_stothers_check(A: FqPoly, B: FqPoly) -> tuple[bool, dict]:
    C = A + B
    if A.is_zero() or B.is_zero() or C.is_zero():
        raise PreconditionViolated("A, B and A + B must be non-zero")
    if gcd(A, B).degree > 0 or gcd(A, C).degree > 0 or gcd(B, C).degree > 0:
        raise PreconditionViolated("A, B, C must be pairwise coprime")
    if A.derivative().is_zero() and B.derivative().is_zero() and C.derivative().is_zero():
        raise PreconditionViolated("all of A', B', C' vanish")
    max_deg = max(A.degree, B.degree, C.degree)
    r = radical_degree(A * B * C)
    return max_deg <= r - 1, {"max_degree": max_deg, "radical_degree": r, "bound": r - 1}


# factorization ---------------------------------------------------------------

def distinct_degree_factorization(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """For monic square-free f: pairs (product of all irreducible factors of degree d, d)."""
    F = f.F
    out = []
    rest = f
    t = FqPoly.t(F)
    h = t % rest
    d = 1
    while rest.degree >= 2 * d:
        h = h.powmod(F.q, rest)
        g = gcd(rest, h - t)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
        d += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def omega_poly(P: FqPoly) -> int:
    """Number of distinct monic irreducible factors."""
    if P.is_zero():
        raise InvalidInput("omega of 0")
    return sum(
        g.degree // d
        for fac, _ in squarefree_decomposition(P)
        for g, d in distinct_degree_factorization(fac)
    )


def equal_degree_factorization(f: FqPoly, d: int, rng: random.Random) -> list[FqPoly]:
    """Split monic square-free f, all of whose irreducible factors have degree d."""
    n = f.degree
    if n <= d:
        return [f]
    F = f.F
    while True:
        a = FqPoly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.degree < 1:
            continue
        if F.p == 2:
            b, power = a % f, a % f
            for _ in range(F.e * d - 1):
                power = (power * power) % f
                b = b + power
        else:
            b = a.powmod((F.q**d - 1) // 2, f) - 1
        g = gcd(f, b)
        if 0 < g.degree < n:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


def factor_poly(f: FqPoly, seed: int = 0) -> list[tuple[FqPoly, int]]:
    """Monic irreducible factors with exponents, sorted by (degree, coefficients)."""
    rng = random.Random(seed)
    out = []
    for fac, mult in squarefree_decomposition(f):
        for g, d in distinct_degree_factorization(fac):
            for irr in equal_degree_factorization(g, d, rng):
                out.append((irr, mult))
    return sorted(out, key=lambda pe: (pe[0].degree, pe[0].c[::-1]))


# irreducible counts -----------------------------------------------------------

def mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def irreducible_count(q: int, d: int) -> int:
    """Monic irreducibles of degree d over F_q (necklace formula)."""
    return sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0) // d
