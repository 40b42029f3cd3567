import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from airytrace.airy import (SheafSpec, f2_traces_predicted, g8, infg_family, monomial,
                            random_spec, raw_sum, raw_sum_scalar, suzuki_standard, t_of_q,
                            trace_F, trace_F_scalar, trace_G, trace_G_scalar, trace_L)
from airytrace.exactnum import ClearedValue, GaussInt, abs_square, from_gauss_rational
from airytrace.gf2m import is_irreducible, make_field
from airytrace.witt2 import Witt2, psi2, w_trace_fold


def fold_trace_F(spec, k, t):
    """Independent oracle: Witt fold, plain powering, explicit clearing."""
    acc = GaussInt(0)
    for x in k.elements():
        fx = 0
        for e in spec.f_exps:
            fx ^= k.pow(x, e)
        acc = acc + psi2(w_trace_fold(k, Witt2(k, k.pow(x, spec.t), fx ^ k.mul(t, x))))
    clearing = GaussInt(1, -1 if spec.n % 2 == 0 else 1) ** k.degree
    # -acc / clearing = -acc * conj(clearing) / 2^d
    num = -acc * clearing.conj()
    return from_gauss_rational(Fraction(num.re, 1 << k.degree), Fraction(num.im, 1 << k.degree))


def test_t_of_q():
    assert t_of_q(1) == 5
    assert t_of_q(3) == 113
    for n in range(1, 8):
        s = suzuki_standard(n)
        assert s.degree_f == s.rank + 1


def test_spec_validation():
    with pytest.raises(ValueError):
        SheafSpec(1, (3, 30))
    with pytest.raises(ValueError):
        suzuki_standard(1).descent(3)
    with pytest.raises(ValueError):
        SheafSpec(1, (15,), None, "G", 5)
    assert g8().s == 1 and g8().r == 5


def test_trace_L_examples():
    k = make_field(1)
    assert trace_L([1], [], k, 1) == GaussInt(0, 1)
    assert trace_L([], [1], k, 1) == GaussInt(-1)
    k = make_field(6)
    with pytest.raises(ValueError):
        trace_L({1: 1 << 6}, [], k, 1)


@given(st.integers(2, 10), st.data())
def test_trace_L_tensor_law(d, data):
    k = make_field(d)
    x = data.draw(st.integers(0, k.order - 1))
    a = data.draw(st.sets(st.integers(1, 40), max_size=4))
    b = data.draw(st.dictionaries(st.integers(0, 40), st.integers(0, k.order - 1), max_size=4))
    assert trace_L(a, b, k, x) == trace_L(a, [], k, x) * trace_L([], b, k, x)


def test_prime_field_traces():
    k = make_field(1)
    s = suzuki_standard(1)
    assert trace_F(s, k, 0) == ClearedValue.of(GaussInt(0, 1))
    assert trace_F(s, k, 1) == ClearedValue.of(-1)


def test_f2_parity_table():
    k = make_field(1)
    rng = random.Random(11)
    specs = [suzuki_standard(n) for n in range(1, 7)]
    specs += [random_spec(rng.randint(1, 5), rng) for _ in range(20)]
    for s in specs:
        assert (trace_F(s, k, 0), trace_F(s, k, 1)) == f2_traces_predicted(s)


@pytest.mark.parametrize("n,d", [(1, 3), (1, 6), (2, 5), (2, 4), (3, 3)])
def test_against_fold_oracle(n, d):
    k = make_field(d)
    s = suzuki_standard(n)
    for t in list(k.elements())[:12]:
        assert trace_F(s, k, t) == fold_trace_F(s, k, t)


def test_vector_and_scalar_paths_agree():
    rng = random.Random(5)
    for d in (4, 7, 10):
        k = make_field(d)
        for _ in range(3):
            s = random_spec(rng.randint(1, 3), rng)
            t = rng.randrange(k.order)
            assert raw_sum(s, k, t) == raw_sum_scalar(s, k, t)


def test_remark_values():
    cases = {(2, 7): (-7, 2, 2), (3, 5): (3, 5, 2), (4, 7): (7, -3, 4), (5, 7): (5, 0, 2)}
    for (n, d), (re, im, den) in cases.items():
        v = trace_F(monomial(n), make_field(d), 1)
        assert v == from_gauss_rational(Fraction(re, den), Fraction(im, den))
    assert trace_F(monomial(2), make_field(7), 1).rational_str() == "(-7+2i)/2"


def test_closed_forms_over_Fq():
    for n, eps in ((1, -1), (2, -1), (3, 1)):
        k = make_field(2 * n + 1)
        v = trace_F(suzuki_standard(n), k, 0)
        assert v == ClearedValue.of(GaussInt(0, -eps * (1 << n)))


def test_frob1_subfields_unit():
    for n in range(1, 6):
        s = suzuki_standard(n)
        q_deg = 2 * n + 1
        for d in range(1, q_deg + 1):
            if q_deg % d == 0:
                assert abs_square(trace_F(s, make_field(d), 1)) == 1
        assert trace_F(s, make_field(q_deg), 1) == ClearedValue.of(-1)


def test_descent_values():
    assert trace_G(g8(), make_field(15), 1) == ClearedValue.of(14)
    assert abs_square(trace_G(g8(), make_field(1), 1)) <= 2
    with pytest.raises(ValueError):
        trace_G(g8(), make_field(4), 0)
    with pytest.raises(ValueError):
        trace_F(g8(), make_field(4), 1)


def test_descent_substitution_identity():
    k = make_field(6)
    s = suzuki_standard(1)
    g = s.descent(5)
    for t in range(1, k.order):
        assert trace_F(s, k, t) == trace_G(g, k, k.pow(t, 5))


def test_descent_small_census_frozen():
    k = make_field(4)
    got = Counter(str(trace_G_scalar(g8(), k, t)) for t in range(1, 16))
    assert got == {"-1": 1, "-i": 4, "1": 6, "i": 4}


def test_abs_bound_and_modulus_independence():
    rng = random.Random(2)
    for d in (3, 5, 8):
        mods = [m for m in range(1 << d, 1 << (d + 1)) if is_irreducible(m)][:2]
        ks = [make_field(d, m) for m in mods]
        s = random_spec(rng.randint(1, 2), rng)
        hist = [Counter(trace_F(s, k, t) for t in k.elements()) for k in ks]
        assert hist[0] == hist[1]
        assert all(abs_square(v) <= 1 << d for v in hist[0])
        for k in ks:
            assert trace_F(s, k, 1) == trace_F(s, ks[0], 1)


def test_scalar_and_fast_entry_points():
    k = make_field(9)
    s = infg_family(3)
    for t in (0, 1, 77):
        assert trace_F(s, k, t) == trace_F_scalar(s, k, t)
    g = suzuki_standard(2).descent(5)
    assert t_of_q(2) == 25
    for u in (1, 5):
        assert trace_G(g, k, u) == trace_G_scalar(g, k, u)
