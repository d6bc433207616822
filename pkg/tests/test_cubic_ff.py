import random

import pytest

from monocubic.cubic_ff import (
    DegreeBounds,
    MonogenicFF,
    NotMonogenicFF,
    PureCubicFF,
    congruence_solver_ff,
    cube_roots_mod,
    decide_monogenic_ff,
    decide_monogenic_ff_congruence,
    degree_bounds,
    extended_search,
    integral_basis_ff,
    is_witness,
    monogenic_table_bruteforce,
    normalize_solution,
    poly_cube_root,
    random_field,
    unit_scale,
)
from monocubic.errors import InvalidInput, NotASolution
from monocubic.ff_arith import FqPoly, field_for, gcd, is_square_free_poly, omega_poly, parse_poly, polys_up_to


def field(q, g, h):
    F = field_for(q)
    return PureCubicFF(F, parse_poly(F, g), parse_poly(F, h))


def test_basis_examples(F2):
    assert str(integral_basis_ff(field(2, "t", "t+1"))) == "1, a, a^2/t"
    num, den = integral_basis_ff(field(5, "t^2+2", "t+1")).determinant()
    assert num == 1 and den == parse_poly(field_for(5), "t^2+2")


def test_field_validation(F2):
    with pytest.raises(InvalidInput):
        field(2, "t", "t^2")
    with pytest.raises(InvalidInput):
        field(2, "t", "t^2+t")


def test_degree_bounds_examples():
    assert degree_bounds(1, 5) == DegreeBounds(2, 1)
    assert degree_bounds(1, 0) == DegreeBounds(0, 0)
    assert degree_bounds(2, 4) == DegreeBounds(2, 1)


def test_decide_examples(F2):
    one = FqPoly.const(F2, 1)
    assert decide_monogenic_ff(field(2, "t", "t+1")) == MonogenicFF(one, one, 1)
    assert decide_monogenic_ff(field(2, "t", "t^2+t+1")) == NotMonogenicFF()
    v = decide_monogenic_ff(field(5, "t^2+2", "3"))
    assert v.x.is_zero() and v.y == 1 and v.alpha == field_for(5).neg(3)


@pytest.mark.parametrize("q,top", [(2, 6), (4, 3), (5, 3), (7, 2)])
def test_search_brute_and_congruence_agree(q, top):
    F = field_for(q)
    t = FqPoly.t(F)
    for h in polys_up_to(F, top, include_zero=False):
        if not is_square_free_poly(h) or gcd(t, h).degree > 0:
            continue
        fld = PureCubicFF(F, t, h)
        verdicts = [decide_monogenic_ff(fld), decide_monogenic_ff(fld, "brute"), decide_monogenic_ff_congruence(fld)]
        assert len({v.tag for v in verdicts}) == 1
        for v in verdicts:
            if isinstance(v, MonogenicFF):
                assert is_witness(fld, v.x, v.y, v.alpha)


def test_bruteforce_table_matches_decider(F2):
    t = FqPoly.t(F2)
    table = monogenic_table_bruteforce(F2, t, 7)
    for h in polys_up_to(F2, 7, include_zero=False):
        if h.degree < 1 or not is_square_free_poly(h) or gcd(t, h).degree > 0:
            continue
        assert (h.c in table) == isinstance(decide_monogenic_ff(PureCubicFF(F2, t, h)), MonogenicFF)


def test_completeness_beyond_bounds(F2):
    t = FqPoly.t(F2)
    found = extended_search(F2, t, 6, 4)
    for h in polys_up_to(F2, 4, include_zero=False):
        if h.degree < 1 or not is_square_free_poly(h) or gcd(t, h).degree > 0:
            continue
        if isinstance(decide_monogenic_ff(PureCubicFF(F2, t, h)), NotMonogenicFF):
            assert h.c not in found


def test_unit_scaling(F5):
    rng = random.Random(4)
    for _ in range(30):
        fld = random_field(F5, rng.randrange(1, 3), rng.randrange(0, 4), rng)
        v = decide_monogenic_ff(fld)
        if isinstance(v, MonogenicFF):
            for u in F5.units():
                s = unit_scale(F5, v, u)
                assert is_witness(fld, s.x, s.y, s.alpha)


def test_poly_cube_root(F5):
    rng = random.Random(1)
    for _ in range(100):
        x = FqPoly(F5, [rng.randrange(5) for _ in range(5)])
        assert poly_cube_root(x**3) in {x}
    assert poly_cube_root(FqPoly.t(F5)) is None


def test_normalize_already_normal(F2):
    fld = field(2, "t", "t+1")
    one = FqPoly.const(F2, 1)
    assert normalize_solution(fld, one, one) == (one, one)
    with pytest.raises(NotASolution):
        normalize_solution(fld, FqPoly.t(F2), one)


def test_normalize_degenerate_scan():
    """Every solution found with deg X <= 4 over F_2 and F_5 normalizes to one with a live derivative."""
    for q, dx, dh in ((2, 4, 8), (5, 2, 4)):
        F = field_for(q)
        for g in (FqPoly.t(F), FqPoly.t(F) + 1):
            for hc, (x, y, alpha) in extended_search(F, g, dx, dh).items():
                fld = PureCubicFF(F, g, FqPoly(F, hc))
                x1, y1 = normalize_solution(fld, x, y)
                assert is_witness(fld, x1, y1)
                assert (g * x1**3).derivative() or (fld.h * y1**3).derivative()


def test_congruence_examples(F2):
    t = FqPoly.t(F2)
    one = FqPoly.const(F2, 1)
    assert congruence_solver_ff(t, 1, one) == [FqPoly(F2)]
    Y = t + 1
    classes = congruence_solver_ff(t, 1, Y)
    mod = Y**3
    brute = [x for x in polys_up_to(F2, 2) if ((t * x**3 - 1) % mod).is_zero()]
    assert sorted(c.c for c in classes) == sorted(x.c for x in brute) and len(classes) <= 3


def test_congruence_class_bound(F5):
    rng = random.Random(7)
    for _ in range(500):
        g = FqPoly(F5, [rng.randrange(5) for _ in range(rng.randrange(1, 3))] + [1])
        Y = FqPoly(F5, [rng.randrange(5) for _ in range(rng.randrange(0, 3))] + [1])
        alpha = rng.randrange(1, 5)
        classes = congruence_solver_ff(g, alpha, Y, seed=rng.randrange(10))
        if gcd(Y, g).degree > 0:
            assert classes == []
            continue
        assert len(classes) <= 3 ** omega_poly(Y)
        for x in classes:
            assert ((g * x**3 - alpha) % Y**3).is_zero()


def test_cube_roots_large_residue_fields(F2):
    # residue fields of size 2^13 (2 mod 3) and 2^14 (1 mod 3) avoid the brute-force path
    for d in (13, 14):
        P = next(p for p in polys_up_to(F2, d, monic=True) if p.degree == d and omega_poly(p) == 1 and is_square_free_poly(p))
        a = (FqPoly(F2, [1, 1, 0, 1]) ** 3) % P
        roots = cube_roots_mod(a, P)
        assert roots and all(((r**3) % P) == a for r in roots)
