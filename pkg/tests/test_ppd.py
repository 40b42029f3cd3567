import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, totient

from airytrace.exactnum import QuadSurd, RealInterval, cyclotomic_value
from airytrace.ppd import (certify_ppd, coprime_residue_count, diophantine_check, equi2_check,
                           equi_check, f_at_one_certified, f_at_one_closed, f_at_one_lemma,
                           f_eval, increasing_lemma_holds, jacobi, multiplicative_order, p2,
                           p2_certified, p3, p3_pair, phi_bounds_check, phi_bounds_violations,
                           sweep, verify_suzuki2, verify_tori)
from airytrace.ppd.diophantine import solve_brute, solve_exact
from airytrace.ppd.numtheory import phi
from airytrace.ppd.products import p3_certified, p3_resultant
from airytrace.ppd.tori import ree_t, suzuki_t

ODD = [n for n in range(1, 60, 2)]


def test_number_theory_basics():
    assert multiplicative_order(2, 13) == 12
    assert jacobi(2, 7) == 1 and jacobi(2, 5) == -1
    rng = random.Random(0)
    for _ in range(50):
        m = rng.randrange(2, 5000)
        a = rng.randrange(1, m)
        if gcd(a, m) == 1:
            assert phi(m) % multiplicative_order(a, m) == 0


def test_p2_values():
    assert (p2(3, 1), p2(3, 3)) == (1, 13)
    assert p2(7, 1) == 113 == suzuki_t(7)[0]
    table = {1: (1, 5), 5: (5, 41), 7: (113, 29), 9: (37, 109), 11: (397, 2113),
             15: (61, 1321), 21: (14449, 1429)}
    for n, pair in table.items():
        assert (p2(n, 1), p2(n, 3)) == pair


@pytest.mark.parametrize("n", ODD)
def test_p2_identities_and_interval(n):
    a, b = p2(n, 1), p2(n, 3)
    assert a * b == cyclotomic_value(4 * n, 2)
    tm, tp = suzuki_t(n)
    assert tm % a == 0 and tp % b == 0
    if n <= 35:
        assert (p2_certified(n, 1), p2_certified(n, 3)) == (a, b)


def test_p3_values():
    assert p3_pair(3) == (19, 37) and 19 * 37 == cyclotomic_value(18, 3) == 703
    assert p3_pair(1) == (1, 7)
    assert [p3_pair(n) for n in (5, 7)] == [(31, 271), (301, 2269)]


@pytest.mark.parametrize("n", ODD)
def test_p3_identities(n):
    a, b = p3_pair(n)
    assert a * b == cyclotomic_value(6 * n, 3)
    tm, tp = ree_t(n)
    assert tm % a == 0 and tp % b == 0


def test_p3_fast_path_matches_interval():
    for n in range(1, 120, 2):
        if n % 3:
            assert p3_resultant(n, 1) == p3_certified(n, 1)
            assert p3_resultant(n, 5) == p3_certified(n, 5)
    assert p3(39, 1, certify=True) == p3(39, 1)


def test_tori_reports():
    r = verify_tori("suzuki", 7)
    assert r.ok and r.ppd["P21"]["ell"] == 113 and r.ppd["P21"]["ell_order"] == 28
    r = verify_tori("ree", 3)
    assert r.ok and r.ppd["P31"]["ell"] == 19 and r.ppd["P31"]["ell_order"] == 18
    s2 = verify_suzuki2(1)
    assert s2.phi24 == {"phi_prime": 13, "phi_double_prime": 1}
    assert s2.ok and not s2.ppd["phi_double_prime"]["certified"]
    for n in (3, 5, 7, 9):
        assert verify_suzuki2(n).ok


def test_ppd_certificate_against_factorization():
    for m, N in ((28, 113 * 29), (12, 13), (20, 25 * 41), (18, 7 * 19 * 37)):
        c = certify_ppd(2 if m != 18 else 3, m, N)
        base = 2 if m != 18 else 3
        primitive = [p for p in factorint(N) if multiplicative_order(base, p) == m]
        assert c.certified == bool(primitive)
        if c.ell is not None:
            assert c.ell in primitive


def test_sweeps():
    res = sweep("suzuki", 2601, threads=4)
    assert len(res) == 1298 and all(res.values())
    res = sweep("ree", 353, threads=4)
    assert len(res) == 176 and all(res.values())


def test_f_product_examples():
    assert f_at_one_closed(15, 1, 8) == QuadSurd.make(1, 1, 2) ** -4
    assert f_at_one_closed(7, 1, 8) == 1
    sqrt2 = RealInterval.point(2, 300).sqrt()
    for n in (7, 9):
        assert f_eval(n, 1, 8, sqrt2, 300).contains(p2(n, 1))
    for n in (3, 7, 9, 15, 45, 105):
        for d, a in ((8, 1), (8, 3), (12, 1), (12, 5)):
            assert f_at_one_closed(n, a, d) == f_at_one_lemma(n, a, d)
            assert f_at_one_certified(n, a, d)


@given(st.integers(1, 60).map(lambda k: 2 * k + 1),
       st.sampled_from([Fraction(11, 10), Fraction(3, 2), Fraction(2), Fraction(7, 3)]),
       st.sampled_from([(8, 1), (8, 3), (12, 1), (12, 5)]))
def test_increasing_lemma(n, x, case):
    d, a = case
    assert increasing_lemma_holds(n, a, d, x)


def test_increasing_lemma_at_surds():
    for x in (RealInterval.point(2, 256).sqrt(), RealInterval.point(3, 256).sqrt()):
        assert increasing_lemma_holds(21, 1, 8, x)
    with pytest.raises(ValueError):
        increasing_lemma_holds(21, 1, 8, 1)


def test_equidistribution():
    assert coprime_residue_count(15, 8, 1) == 1
    assert equi_check(15, 8)
    assert coprime_residue_count(1, 5, 1) == 1 and coprime_residue_count(1, 5, 2) == 0
    assert equi2_check(45)
    with pytest.raises(ValueError):
        equi_check(10, 4)
    for n in range(1, 400):
        for m in (1, 3, 7, 8, 12):
            if gcd(m, n) == 1:
                brute = [sum(1 for k in range(1, n + 1) if gcd(k, n) == 1 and k % m == a)
                         for a in range(m)]
                assert [coprime_residue_count(n, m, a) for a in range(m)] == brute
                assert equi_check(n, m)


def test_diophantine():
    v = diophantine_check(1)
    assert v.ok and v.solutions["iii"] == [6] and v.D == 14
    assert diophantine_check(2).D == 124 and not any(diophantine_check(2).solutions.values())
    assert all(diophantine_check(n).ok for n in range(1, 51))
    for n in range(1, 7):
        assert solve_exact(n) == solve_brute(n)


def test_phi_bounds():
    assert phi(49) == 42 == int(totient(49))
    assert phi_bounds_check(49) == (True, True)
    # n = 5 fails the second bound without being listed as an exception
    assert phi_bounds_violations(5000) == [5]
