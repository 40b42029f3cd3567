import json
import random
from collections import Counter
from fractions import Fraction

import pytest

from airytrace.airy import (g8, random_spec, suzuki_standard, trace_F, trace_F_scalar,
                            trace_G, trace_G_scalar)
from airytrace.census import (CheckpointError, CensusReport, census_for_G, census_naive,
                              census_wht, decimal_string, empirical_moment,
                              empirical_moment_complex, precompute, raw_all_wht)
from airytrace.exactnum import ClearedValue, abs_square
from airytrace.gf2m import is_irreducible, make_field
from airytrace.witt2 import Witt2, w_trace

SEVEN = {"-2": 4095, "-1": 52429, "-2i": 16256, "0": 112347, "2i": 16512, "1": 60495, "14": 9}


def test_precompute_table():
    k = make_field(3)
    s = suzuki_standard(1)
    tab = precompute(s, k)
    assert tab.c0[0] == 0 and tab.mask[0] == 0
    rng = random.Random(0)
    for _ in range(20):
        x, t = rng.randrange(8), rng.randrange(8)
        b = k.pow(x, 30) ^ k.mul(t, x)
        assert tab.exponent(x, t) == w_trace(k, Witt2(k, k.pow(x, 5), b))
    assert sum(Counter(tab.c0.tolist()).values()) == 8


def test_scalar_census_frozen_f64():
    # frozen from the one-point scalar oracle
    k = make_field(6)
    rep = census_wht(suzuki_standard(1), k, "k")
    assert rep.multiset_str() == {"-2": 1, "-1": 13, "-2i": 6, "0": 27, "2i": 2, "1": 15}
    assert Counter(str(trace_F_scalar(suzuki_standard(1), k, t)) for t in k.elements()) == \
        Counter(rep.multiset_str())
    rep = census_wht(suzuki_standard(2), make_field(5), "k")
    assert rep.multiset_str() == {"-1": 6, "0": 15, "4i": 1, "1": 10}


def test_naive_sizes_and_equivalence():
    rep = census_naive(suzuki_standard(1), make_field(9), "k")
    assert rep.total == 1 << 9
    k6 = make_field(6)
    assert census_naive(suzuki_standard(1), k6).entries == census_wht(suzuki_standard(1), k6).entries


@pytest.mark.parametrize("d", range(1, 13))
def test_wht_equals_naive(d):
    rng = random.Random(100 + d)
    k = make_field(d)
    for _ in range(5):
        s = random_spec(rng.randint(1, 3), rng, shaped=rng.random() < 0.5)
        assert census_wht(s, k, "k").entries == census_naive(s, k, "k").entries


def test_wht_against_single_point():
    k = make_field(10)
    s = suzuki_standard(2)
    re, im = raw_all_wht(s, k)
    rep = census_wht(s, k, "k")
    hist = Counter()
    for t in range(k.order):
        hist[trace_F(s, k, t)] += 1
    assert dict(hist) == rep.as_dict()
    assert sum(int(a) ** 2 + int(b) ** 2 for a, b in zip(re, im)) == 1 << 20


def test_census_bounds_and_modulus_invariance():
    rng = random.Random(9)
    for d in (5, 8, 10):
        mods = [m for m in range(1 << d, 1 << (d + 1)) if is_irreducible(m)][:2]
        s = random_spec(rng.randint(1, 3), rng)
        reps = [census_wht(s, make_field(d, m), "k") for m in mods]
        assert reps[0].entries == reps[1].entries
        assert all(abs_square(v) <= 1 << d for v, _ in reps[0].entries)


def test_threads_and_checkpoint(tmp_path):
    k = make_field(10)
    s = suzuki_standard(1)
    ref = census_wht(s, k)
    path = tmp_path / "ck.jsonl"
    a = census_naive(s, k, threads=2, checkpoint=str(path), chunk=128)
    assert a.entries == ref.entries
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["version"] == 1 and header["d"] == 10 and header["chunk"] == 128
    # drop half the chunks and resume
    path.write_text("\n".join(lines[: 1 + (len(lines) - 1) // 2]) + "\n")
    b = census_naive(s, k, checkpoint=str(path), chunk=128)
    assert b.entries == ref.entries
    with pytest.raises(CheckpointError):
        census_naive(suzuki_standard(2), k, checkpoint=str(path), chunk=128)


def test_descent_census():
    k = make_field(4)  # gcd(5, 15) = 5: direct path
    rep = census_for_G(g8(), k)
    assert rep.provenance == "direct"
    assert rep.as_dict() == dict(Counter(trace_G_scalar(g8(), k, t) for t in range(1, 16)))
    for d in (7, 9):
        k = make_field(d)
        rep = census_for_G(g8(), k)
        assert rep.provenance == "wht-reindexed"
        assert rep.as_dict() == dict(Counter(trace_G(g8(), k, t) for t in range(1, k.order)))


def test_seven_trace_census_and_moment():
    k = make_field(18)
    rep = census_for_G(g8(), k)
    assert rep.multiset_str() == SEVEN
    assert census_wht(suzuki_standard(1), k).multiset_str() == SEVEN
    m, dec = empirical_moment(rep, 2, 2)
    assert m == Fraction(349492, 87381)
    assert dec == "3.999633787665510808985935157528"
    js = rep.to_json()
    assert js["m22"]["decimal"] == dec and js["modulus"] == "0x40009"


def test_moment_helpers():
    zero = CensusReport(3, 11, {}, [(ClearedValue.of(0), 8)], "k", "test")
    assert empirical_moment(zero, 2, 2)[0] == 0
    rep = census_wht(suzuki_standard(1), make_field(7))
    m11 = empirical_moment(rep, 1, 1)[0]
    assert m11 == sum(abs_square(v) * c for v, c in rep.entries) / rep.total
    assert empirical_moment_complex(rep, 1, 1) == (m11, 0)
    assert decimal_string(Fraction(-1, 3), 4) == "-0.3333"
