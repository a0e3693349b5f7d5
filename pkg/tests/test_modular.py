"""The theta4 <-> theta2 flip: coefficient table, dispatch, consistency."""

from fractions import Fraction

import pytest
from mpmath import mp

from thetacert import (
    Enclosure,
    MODULAR_COEFFICIENTS,
    Status,
    precision,
    theta2_series,
    theta2_via_modular,
    theta4_eval,
    theta4_product,
    theta4_series,
    theta4_via_modular,
    verify_modular_identity,
)
from thetacert.modular import f_modular, f_prime_modular, f_second_modular

from conftest import (
    F_SECOND_AT_HALF,
    THETA4_AT_1,
    assert_contains,
    mp_scalar,
)


def test_coefficient_table_matches_independent_derivation():
    # re-derived by differentiating y^(-1/2) s(1/y) three times by hand;
    # the ladder below re-checks each row against the previous one
    assert MODULAR_COEFFICIENTS[0] == (1,)
    assert MODULAR_COEFFICIENTS[1] == (Fraction(-1, 2), Fraction(-1))
    assert MODULAR_COEFFICIENTS[2] == (Fraction(3, 4), Fraction(3), Fraction(1))
    assert MODULAR_COEFFICIENTS[3] == (
        Fraction(-15, 8),
        Fraction(-45, 4),
        Fraction(-15, 2),
        Fraction(-1),
    )
    # ladder: coefficients of order nu+1 from order nu by the product rule
    for nu in range(3):
        lower = MODULAR_COEFFICIENTS[nu]
        expect = []
        for j in range(len(lower) + 1):
            c = Fraction(0)
            if j < len(lower):
                c += lower[j] * (Fraction(-1, 2) - nu - j)  # d/dy of the power
            if j > 0:
                c += -lower[j - 1]  # chain rule through 1/y, power drops by 2
            expect.append(c)
        assert tuple(expect) == MODULAR_COEFFICIENTS[nu + 1]


def test_fixed_point(cfg):
    e = theta4_via_modular(1, 0, cfg)
    assert_contains(e, THETA4_AT_1)
    assert e.intersects(theta2_series(1, 0, cfg))


def test_small_argument_against_product_form(cfg):
    y = Enclosure("0.1")
    a = theta4_via_modular(y, 0, cfg)
    b = theta4_product(y, cfg)
    assert a.intersects(b)


@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_modular_vs_series_at_1(cfg, nu):
    a = theta4_via_modular(1, nu, cfg)
    b = theta4_series(1, nu, cfg)
    assert a.intersects(b)
    with precision(256):
        assert (a.width + b.width) < mp.mpf(2) ** -80


@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_identity_report_certifies(cfg, nu):
    report = verify_modular_identity(("0.5", "2"), nu, cfg)
    assert report.status is Status.CERTIFIED, report.summary()


def test_identity_detects_corrupted_coefficient(cfg):
    corrupted = dict(MODULAR_COEFFICIENTS)
    corrupted[1] = (Fraction(1, 2), Fraction(-1))  # sign flip on the first entry
    report = verify_modular_identity(("0.5", "2"), 1, cfg, coefficients=corrupted)
    assert report.status is Status.FAILED


def test_composition_round_trip(cfg):
    # theta2 via theta4(1/x), then theta4 via that theta2: back to the start
    for y in ("0.4", "1.3"):
        ye = Enclosure(y)
        direct = theta4_series(ye, 0, cfg)
        with precision(192):
            x = 1 / ye
            t2 = theta2_via_modular(x, cfg)
            rebuilt = ye ** Fraction(-1, 2) * t2
        assert rebuilt.intersects(direct)


def test_public_dispatch_continuity(cfg):
    # either side of the 0.2 split must agree with the product form
    for y in ("0.15", "0.19", "0.21", "0.3"):
        e = theta4_eval(Enclosure(y), 0, cfg)
        assert e.intersects(theta4_product(Enclosure(y), cfg))


def test_q_route_f_values(cfg):
    assert_contains(f_second_modular(Enclosure("0.5"), cfg), F_SECOND_AT_HALF)
    # deep into the small-y regime the Q-route keeps full relative precision
    e = f_second_modular(Enclosure("0.05"), cfg)
    assert e.is_strictly_positive()
    assert e.hi < 1e-40
    assert (e.width / e.hi) < 1e-30


def test_q_route_against_jtheta_oracle(cfg):
    # f'(y) = -1/2 + x^2 (log theta2)''-parts at x = 1/y; compare with the
    # independent jtheta-based oracle where it is still accurate
    def f_scalar(y):
        def th4(t):
            return mp.jtheta(4, 0, mp.e ** (-mp.pi * t))

        return y ** 2 * mp.diff(th4, y) / th4(y)

    with precision(256):
        for y in ("0.2", "0.5", "0.8"):
            ye = Enclosure(y)
            for fn, order in ((f_modular, 0), (f_prime_modular, 1), (f_second_modular, 2)):
                enc = fn(ye, cfg)
                oracle = mp_scalar(f_scalar, mp.mpf(y), order, dps=60)
                # the oracle's numerical differentiation is the accuracy floor
                assert abs(enc - Enclosure(oracle)).hi < 1e-12
