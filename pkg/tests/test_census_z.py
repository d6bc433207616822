import json

import pytest

from monocubic.census_z import (
    FieldClass,
    enumerate_census,
    is_eligible,
    lower_bound_family,
    sieve_prime_density,
    sieve_primes_in_s,
)
from monocubic.errors import InvalidInput
from monocubic.int_arith import Mod9, primes_up_to
from monocubic.thue_z import Monogenic, NotMonogenic, decide_monogenic


def test_k1_class_s_all_monogenic():
    report = enumerate_census(1, FieldClass.S, 10)
    assert [r.m for r in report.records] == [2, 3, 5, 6, 7]
    assert all(r.verdict == Monogenic(1, 0) for r in report.records)


def test_k2_records():
    report = enumerate_census(2, FieldClass.S, 30)
    by_m = {r.m: r.verdict for r in report.records}
    assert by_m[15] == Monogenic(2, 1)
    assert by_m[21] == NotMonogenic(7)
    assert 13 in by_m
    assert sum(report.counts.values()) == len(report.records)


def test_class_t_and_sign():
    report = enumerate_census(1, FieldClass.T, 100, sign=Mod9.PLUS_ONE)
    assert all(r.m % 9 == 1 for r in report.records)
    assert all(is_eligible(1, r.m, FieldClass.T, Mod9.PLUS_ONE) for r in report.records)
    with pytest.raises(InvalidInput):
        enumerate_census(3, FieldClass.T, 100)


def test_workers_and_known_do_not_change_output():
    base = enumerate_census(2, FieldClass.S, 3000)
    par = enumerate_census(2, FieldClass.S, 3000, workers=3, block=200)
    assert par.to_csv() == base.to_csv() and par.density_csv() == base.density_csv()
    known = {r.m: r.verdict for r in base.records[::3]}
    assert enumerate_census(2, FieldClass.S, 3000, known=known).to_csv() == base.to_csv()


def test_report_outputs():
    report = enumerate_census(2, FieldClass.S, 1000, checkpoints=[100, 1000])
    assert report.filename == "census_z_k2_S_N1000.csv"
    assert report.to_csv().splitlines()[0] == "m,class,verdict,X,Y,obstruction_modulus,height"
    assert [p.checkpoint for p in report.density_series] == [100, 1000]
    assert json.loads(report.to_json())["counts"] == report.counts


def test_lower_bound_family_examples():
    assert lower_bound_family(2, FieldClass.S, 20) == [(1, (1, 1)), (15, (2, 1))]
    assert lower_bound_family(1, FieldClass.S, 30) == [(7, (2, 1))]


@pytest.mark.parametrize("cls", [FieldClass.S, FieldClass.T])
def test_lower_bound_family_members_are_monogenic(cls):
    for m, (x, y) in lower_bound_family(2, cls, 10**5):
        assert is_eligible(2, m, cls)
        c = 1 if cls is FieldClass.S else 9
        assert 2 * x**3 - m * y**3 == c
        assert isinstance(decide_monogenic(2, m), Monogenic)


def test_sieve_matches_euler_criterion_count():
    expected = [p for p in primes_up_to(1000) if p % 3 == 1 and pow(2, (p - 1) // 3, p) != 1]
    assert sieve_primes_in_s(1, 2, 1000) == expected
    assert sieve_prime_density(1, 2, 1000).s_count == len(expected)


def test_sieve_density_example():
    r = sieve_prime_density(1, 2, 10**5)
    assert abs(r.ratio - 1 / 3) < 0.02 and 0 < r.partial_product <= 1
    with pytest.raises(InvalidInput):
        sieve_prime_density(2, 16, 10**4)
