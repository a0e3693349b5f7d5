"""Foundation arithmetic: containment, rounding, domain errors."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from thetacert import (
    DomainError,
    Enclosure,
    EvalConfig,
    as_enclosure,
    current_precision,
    precision,
)

from conftest import PI_50


def test_exact_integer_addition():
    e = Enclosure(1) + Enclosure(2)
    assert e.contains(3)
    assert e.width <= mp.mpf(2) ** (-125)


def test_interval_product_signs():
    e = Enclosure(-1, 1) * Enclosure(-1, 1)
    assert e.contains(Enclosure(-1, 1))
    assert e.lo >= -1 and e.hi <= 1


def test_division():
    e = Enclosure(1, 2) / Enclosure(4)
    assert e.contains(Enclosure(Fraction(1, 4))) and e.contains(Enclosure(Fraction(1, 2)))
    assert abs(e.lo - 0.25) < 1e-30 and abs(e.hi - 0.5) < 1e-30


def test_division_by_zero_interval_is_explicit_error():
    with pytest.raises(DomainError):
        Enclosure(1) / Enclosure(-1, 1)
    with pytest.raises(DomainError):
        Enclosure(1) / Enclosure(0)


def test_exp_of_zero_contains_one():
    assert Enclosure(0).exp().contains(1)


def test_pi_against_published_digits():
    e = Enclosure.pi()
    with precision(300):
        oracle = Enclosure(PI_50)  # 50 digits, so itself uncertain at ~1e-50
        assert e.intersects(oracle)
        assert abs(e - oracle).hi <= e.width + mp.mpf("1e-49")
    # width <= 4 * 2^(1-prec)
    assert e.width <= mp.mpf(2) ** (3 - current_precision())


def test_sqrt_via_rational_power():
    e = Enclosure(4) ** Fraction(1, 2)
    assert e.contains(2)
    assert e.width < 1e-30


def test_fractional_power_requires_positive_base():
    with pytest.raises(DomainError):
        Enclosure(-1, 1) ** Fraction(1, 2)
    with pytest.raises(DomainError):
        Enclosure(0, 1) ** Fraction(9, 2)


def test_negative_integer_power_requires_nonzero():
    with pytest.raises(DomainError):
        Enclosure(-1, 1) ** -2
    assert (Enclosure(2) ** -2).contains(Enclosure(Fraction(1, 4)))


def test_string_construction_encloses_decimal():
    e = Enclosure("0.1")
    assert e.lo < e.hi
    assert e.contains(Enclosure(Fraction(1, 10)))


def test_negative_values_keep_endpoint_order():
    for v in (Fraction(-9, 100), "-0.09", -0.09, -3):
        e = as_enclosure(v)
        assert e.lo <= e.hi


def test_intersection_and_hull():
    a = Enclosure(0, 2)
    b = Enclosure(1, 3)
    assert a.intersection(b).contains(Enclosure(1, 2))
    assert a.hull(b).contains(Enclosure(0, 3))
    with pytest.raises(ValueError):
        Enclosure(0, 1).intersection(Enclosure(2, 3))


_finite = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
_nonzero = _finite.filter(lambda v: abs(v) > 1e-6)


@settings(max_examples=150, deadline=None)
@given(x=_finite, y=_finite)
def test_containment_add_sub_mul(x, y):
    # enclosure result at 256 bits must contain the scalar result at 512 bits
    with precision(256):
        ex, ey = Enclosure(x), Enclosure(y)
        results = {"add": ex + ey, "sub": ex - ey, "mul": ex * ey}
    with mp.workprec(512):
        exact = {"add": mp.mpf(x) + mp.mpf(y), "sub": mp.mpf(x) - mp.mpf(y), "mul": mp.mpf(x) * mp.mpf(y)}
    with precision(512):
        for op, enc in results.items():
            assert enc.contains(exact[op]), op


@settings(max_examples=100, deadline=None)
@given(x=_finite, y=_nonzero)
def test_containment_div_exp(x, y):
    with precision(256):
        q = Enclosure(x) / Enclosure(y)
        ex = Enclosure(min(x, 30.0)).exp()
    with mp.workprec(512):
        exact_q = mp.mpf(x) / mp.mpf(y)
        exact_e = mp.exp(mp.mpf(min(x, 30.0)))
    with precision(512):
        assert q.contains(exact_q)
        assert ex.contains(exact_e)


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=1e-3, max_value=40, allow_nan=False))
def test_containment_log_pow(x):
    with precision(256):
        lg = Enclosure(x).log()
        pw = Enclosure(x) ** Fraction(9, 2)
    with mp.workprec(512):
        exact_lg = mp.log(mp.mpf(x))
        exact_pw = mp.mpf(x) ** (mp.mpf(9) / 2)
    with precision(512):
        assert lg.contains(exact_lg)
        assert pw.contains(exact_pw)


def test_monotone_precision_never_widens():
    val = Fraction(1, 3)
    with precision(128):
        w128 = ((Enclosure(val) * Enclosure.pi()).exp()).width
    with precision(256):
        w256 = ((Enclosure(val) * Enclosure.pi()).exp()).width
        assert w256 <= w128 * (1 + mp.mpf(2) ** -50)


def test_degenerate_width_bound():
    # width-0 inputs through +,-,* stay within 4 ulp
    with precision(128):
        x = Enclosure(Fraction(22, 7))
        for e in (x + x, x - Enclosure(1), x * x):
            scale = max(abs(e.lo), abs(e.hi), mp.mpf(1))
            assert e.width <= 4 * scale * mp.mpf(2) ** -128


def test_eval_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(precision_bits=32)
    with pytest.raises(ValueError):
        EvalConfig(tail_tolerance=0.0)
    with pytest.raises(ValueError):
        EvalConfig(max_terms=0)
    assert EvalConfig(tail_tolerance="1e-500").tol > 0
