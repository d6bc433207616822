import itertools
import random

import pytest
from hypothesis import given, strategies as st

from monocubic.errors import DivisionByZeroPoly, NotCubeFree, PreconditionViolated
from monocubic.ff_arith import (
    GF,
    FqPoly,
    cube_free_decompose_poly,
    divrem,
    factor_poly,
    field_for,
    format_poly,
    gcd,
    irreducible_count,
    is_square_free_poly,
    mason_stothers_check,
    omega_poly,
    parse_poly,
    polys_of_degree,
    polys_up_to,
    radical_degree,
    random_poly,
    squarefree_decomposition,
    xgcd,
)


def P(F, text):
    return parse_poly(F, text)


def test_field_axioms_small():
    for q in (2, 4, 5, 7, 8, 25):
        F = field_for(q)
        for a in range(q):
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q) == a
        for a, b, c in itertools.product(range(q), repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_gf_rejects_char_3():
    with pytest.raises(ValueError):
        GF(3)


def test_poly_op_examples(F2):
    t = FqPoly.t(F2)
    assert gcd(t * t + t, t) == t
    assert (t * t).derivative().is_zero()
    assert divrem(P(F2, "t^3+1"), P(F2, "t+1")) == (P(F2, "t^2+t+1"), FqPoly(F2))
    assert FqPoly(F2).degree == float("-inf")
    with pytest.raises(DivisionByZeroPoly):
        divrem(t, FqPoly(F2))


def test_parse_and_format(F2, F5):
    f = P(F2, "t^2*(t+1)")
    assert format_poly(f) == "t^3+t^2" and P(F2, "[0,0,1,1]") == f
    g = P(F5, "3t^2+4")
    assert format_poly(g) == "3*t^2+4" or format_poly(g) == "3t^2+4"
    assert parse_poly(F5, format_poly(g)) == g
    F4 = field_for(4)
    h = random_poly(F4, 5, random.Random(0))
    assert parse_poly(F4, format_poly(h)) == h


@given(st.data())
def test_divrem_and_xgcd(data):
    F = field_for(data.draw(st.sampled_from([2, 4, 5, 7])))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a, b = random_poly(F, 8, rng), random_poly(F, 5, rng)
    if b.is_zero():
        return
    quo, rem = divrem(a, b)
    assert quo * b + rem == a and rem.degree < b.degree
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g and (g.is_zero() or g.is_monic())


def test_square_free_examples(F2):
    assert is_square_free_poly(P(F2, "t^2+t"))
    assert not is_square_free_poly(P(F2, "(t+1)^2"))
    assert is_square_free_poly(FqPoly.const(F2, 1))


@pytest.mark.parametrize("q", [2, 5])
def test_square_free_vs_divisibility_oracle(q):
    F = field_for(q)
    squares = [s * s for s in polys_up_to(F, 4, monic=True, include_zero=False) if s.degree >= 1]
    top = 8 if q == 2 else 5
    for f in polys_up_to(F, top, monic=True, include_zero=False):
        brute = not any(s.degree <= f.degree and (f % s).is_zero() for s in squares)
        assert is_square_free_poly(f) == brute


def test_cube_free_decompose_examples(F2):
    t = FqPoly.t(F2)
    assert cube_free_decompose_poly(P(F2, "t^2*(t+1)")) == (t, t + 1)
    assert cube_free_decompose_poly(t + 1) == (FqPoly.const(F2, 1), t + 1)
    with pytest.raises(NotCubeFree):
        cube_free_decompose_poly(t**3)


def test_cube_free_round_trip_and_uniqueness():
    F = field_for(3 + 2)
    monics = list(polys_up_to(F, 3, monic=True, include_zero=False))
    rng = random.Random(3)
    for f in (random_poly(F, 6, rng) for _ in range(200)):
        if f.is_zero():
            continue
        try:
            g, h = cube_free_decompose_poly(f)
        except NotCubeFree:
            continue
        assert g * g * h == f and g.is_monic()
        alternatives = [
            c for c in monics
            if is_square_free_poly(c) and (f % (c * c)).is_zero() and is_square_free_poly(f // (c * c))
            and gcd(c, f // (c * c)).degree <= 0
        ]
        assert alternatives == [g] or g.degree > 3


def test_radical_degree_examples(F2):
    assert radical_degree(P(F2, "t^2*(t+1)")) == 2
    assert radical_degree(P(F2, "(t+1)^4")) == 1
    assert radical_degree(P(F2, "t^2+t+1")) == 2


def test_squarefree_decomposition_reassembles():
    rng = random.Random(8)
    for q in (2, 4, 5, 7):
        F = field_for(q)
        for _ in range(50):
            factors = [random_poly(F, 3, rng, monic=True) for _ in range(4)]
            f = FqPoly.const(F, 1)
            for i, x in enumerate(factors):
                f = f * x ** (i + 1)
            prod = FqPoly.const(F, 1)
            for fac, mult in squarefree_decomposition(f):
                assert is_square_free_poly(fac)
                prod = prod * fac**mult
            assert prod == f.monic()


def test_mason_stothers_examples(F2, F5):
    t2 = FqPoly.t(F2)
    ok, details = mason_stothers_check(t2, FqPoly.const(F2, 1))
    assert ok and details["max_degree"] == 1 and details["radical_degree"] == 2
    t5 = FqPoly.t(F5)
    assert mason_stothers_check(t5 * t5, FqPoly.const(F5, 1))[0]
    with pytest.raises(PreconditionViolated):
        mason_stothers_check(t5**5, FqPoly.const(F5, 1))
    with pytest.raises(PreconditionViolated):
        mason_stothers_check(t5, t5)


def trial_omega(f):
    F = f.F
    count, d = 0, 1
    f = f.monic()
    while f.degree >= 1:
        for p in polys_of_degree(F, d, monic=True):
            if (f % p).is_zero():
                count += 1
                while (f % p).is_zero():
                    f = f // p
        d += 1
    return count


def test_omega_examples(F2):
    assert omega_poly(P(F2, "t^2+t")) == 2
    assert omega_poly(P(F2, "t^2+t+1")) == 1
    assert omega_poly(P(F2, "(t^2+t+1)*t^2")) == 2


def test_omega_vs_trial_division(F2):
    for f in polys_up_to(F2, 8, monic=True, include_zero=False):
        assert omega_poly(f) == trial_omega(f)


def test_factor_poly_reassembles():
    rng = random.Random(2)
    for q in (2, 4, 5, 7):
        F = field_for(q)
        for _ in range(40):
            f = random_poly(F, 9, rng, monic=True)
            if f.degree < 1:
                continue
            prod = FqPoly.const(F, 1)
            for p, e in factor_poly(f, seed=rng.randrange(100)):
                assert p.is_monic() and omega_poly(p) == 1 and is_square_free_poly(p)
                prod = prod * p**e
            assert prod == f


def test_irreducible_count_necklace():
    for q in (2, 3, 4, 5):
        F = field_for(q) if q != 3 else None
        for d in range(1, 6):
            if F is None:
                continue
            brute = sum(1 for f in polys_of_degree(F, d, monic=True) if omega_poly(f) == 1 and is_square_free_poly(f))
            assert irreducible_count(q, d) == brute
    assert irreducible_count(3, 2) == 3
