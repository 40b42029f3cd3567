from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from airytrace.exactnum import (ClearedValue, GaussInt, QuadSurd, RealInterval, abs_square,
                                certified_integer, cleared_normalize, cyclotomic_poly,
                                cyclotomic_value, eval_poly_gauss, eval_poly_int,
                                from_gauss_rational, i_power, poly_divmod)

ints = st.integers(-10 ** 6, 10 ** 6)
gauss = st.builds(GaussInt, ints, ints)
cleared = st.builds(cleared_normalize, gauss, st.integers(0, 12))


def as_pair(v: ClearedValue):
    return v.to_gauss_rational()


def cplx_mul(p, q):
    return p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0]


def test_gauss_basics():
    assert GaussInt(3, 2).norm() == 13
    assert GaussInt(1, 1) ** 2 == GaussInt(0, 2)
    assert [i_power(k) for k in range(4)] == [GaussInt(1), GaussInt(0, 1), GaussInt(-1),
                                              GaussInt(0, -1)]
    assert str(GaussInt(-7, 2)) == "-7+2i"


def test_cleared_normalize_examples():
    assert cleared_normalize(GaussInt(0, 2), 2) == ClearedValue(GaussInt(1), 0)
    assert cleared_normalize(GaussInt(0), 7) == ClearedValue(GaussInt(0), 0)
    assert cleared_normalize(GaussInt(3, 2), 0) == ClearedValue(GaussInt(3, 2), 0)


def test_abs_square_examples():
    assert abs_square(cleared_normalize(GaussInt(3, 2), 0)) == 13
    assert abs_square(cleared_normalize(GaussInt(-7, 2), 2)) == Fraction(53, 4)
    assert abs_square(ClearedValue.of(0)) == 0


def test_rational_forms():
    v = from_gauss_rational(Fraction(-7, 2), Fraction(1))
    assert v.rational_str() == "(-7+2i)/2"
    assert as_pair(v) == (Fraction(-7, 2), Fraction(1))
    assert from_gauss_rational(Fraction(5, 2), Fraction(0)).rational_str() == "5/2"
    with pytest.raises(ValueError):
        from_gauss_rational(Fraction(1, 3), Fraction(0))


@given(cleared, cleared)
def test_cleared_arithmetic_matches_rationals(u, v):
    pu, pv = as_pair(u), as_pair(v)
    assert as_pair(u + v) == (pu[0] + pv[0], pu[1] + pv[1])
    assert as_pair(u - v) == (pu[0] - pv[0], pu[1] - pv[1])
    assert as_pair(u * v) == cplx_mul(pu, pv)
    assert as_pair(u.conj()) == (pu[0], -pu[1])
    assert abs_square(u) == pu[0] ** 2 + pu[1] ** 2


@given(gauss, st.integers(0, 20))
def test_normalize_is_canonical(z, e):
    v = cleared_normalize(z, e)
    assert as_pair(v) == as_pair(ClearedValue(z, e))
    # canonical: numerator not divisible by 1+i unless nothing left to cancel
    assert v.denom_exp == 0 or (v.num.re - v.num.im) % 2 == 1
    assert cleared_normalize(v.num, v.denom_exp) == v


def test_cyclotomic_polys():
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_poly(1) == (-1, 1)
    for n in range(1, 60):
        assert cyclotomic_poly(n) == tuple(int(c) for c in reversed(
            sympy.Poly(sympy.cyclotomic_poly(n, sympy.Symbol("x"))).all_coeffs()))
        xn = (-1,) + (0,) * (n - 1) + (1,)
        assert poly_divmod(xn, cyclotomic_poly(n))[1] == ()
    for n in (3, 5, 7):
        p4 = cyclotomic_poly(4 * n)
        squared = tuple(c for a in p4 for c in (a, 0))[:-1]
        assert cyclotomic_poly(8 * n) == squared


def test_cyclotomic_values():
    assert eval_poly_int(cyclotomic_poly(12), 2) == 13
    assert eval_poly_gauss(cyclotomic_poly(3), GaussInt(1, 1)) == GaussInt(2, 3)
    assert eval_poly_int(cyclotomic_poly(7), 0) == 1
    for n in range(1, 80):
        assert cyclotomic_value(n, 2) == eval_poly_int(cyclotomic_poly(n), 2)
        assert cyclotomic_value(n, 3) == eval_poly_int(cyclotomic_poly(n), 3)
        z = GaussInt(1, 1)
        assert cyclotomic_value(n, z) == eval_poly_gauss(cyclotomic_poly(n), z)
    # z a root of unity takes the polynomial path
    assert cyclotomic_value(4, GaussInt(0, 1)) == GaussInt(0)


def test_quad_surd():
    s = QuadSurd.make(1, 1, 2)
    assert s * s.conj() == -1
    assert (s ** -4) * (s ** 4) == 1
    assert QuadSurd.make(3, -2, 2).sign() == 1      # 3 > 2 sqrt 2
    assert QuadSurd.make(-3, 2, 2).sign() == -1
    assert QuadSurd.make(1, -1, 2).sign() == -1
    iv = s.to_interval()
    assert Fraction(24142135, 10 ** 7) < iv.lower < iv.upper < Fraction(24142136, 10 ** 7)


@given(st.fractions(-100, 100), st.fractions(-100, 100))
def test_quad_surd_sign_matches_interval(a, b):
    q = QuadSurd.make(a, b, 3)
    iv = q.to_interval(200)
    if q.sign() > 0:
        assert iv.upper > 0
    elif q.sign() < 0:
        assert iv.lower < 0
    else:
        assert iv.contains(0)


@given(st.fractions(-50, 50, max_denominator=1000), st.fractions(-50, 50, max_denominator=1000),
       st.fractions(0, 1), st.fractions(0, 1))
def test_interval_containment(a, b, s, t):
    A = RealInterval.hull(a, a + 1)
    B = RealInterval.hull(b, b + 1)
    x, y = a + s, b + t
    assert (A + B).contains(x + y)
    assert (A - B).contains(x - y)
    assert (A * B).contains(x * y)
    if b > 0:
        assert (A / B).contains(x / y)
    assert (A * A).contains(x * x)


def test_interval_sqrt_cos_and_isolation():
    r = RealInterval.point(2, 128).sqrt()
    assert r.lower ** 2 <= 2 <= r.upper ** 2
    c = RealInterval.point(0, 64).cos()
    assert c.contains(1)
    assert certified_integer(lambda p: RealInterval.point(Fraction(7, 1), p) * 3) == 21
    assert RealInterval.hull(Fraction(1, 3), Fraction(2, 3)).isolate_integer() is None
