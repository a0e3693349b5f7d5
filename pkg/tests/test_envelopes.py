"""Envelope formulas, the sandwich certification, and c_nu admissibility."""

from fractions import Fraction

import pytest
from mpmath import mp

from thetacert import (
    DomainError,
    Enclosure,
    EnvelopeConstants,
    Status,
    admissibility_factor,
    certify_sign,
    check_c_admissible,
    log_grid,
    lower_envelope,
    precision,
    tail_integral,
    upper_envelope,
    verify_sandwich,
)
from thetacert.envelopes import envelope_derivative

from conftest import ADMISSIBILITY_FACTORS, LOWER_ENVELOPE_1_0, assert_contains


def test_lower_envelope_values(cfg):
    e = lower_envelope(1, 0, cfg)
    assert_contains(e, LOWER_ENVELOPE_1_0)
    with precision(256):
        pi = Enclosure.pi()
        expected = (pi / 2) * (-(pi / 4)).exp() + (9 * pi / 2) * (-(9 * pi / 4)).exp()
        assert lower_envelope(1, 1, cfg).intersects(expected)
    assert lower_envelope(50, 0, cfg).hi < 1e-16


def test_envelope_domain_error(cfg):
    with pytest.raises(DomainError):
        lower_envelope(Enclosure("0.5"), 0, cfg)
    with pytest.raises(DomainError):
        tail_integral(0, Enclosure("0.9"), cfg)


def test_upper_envelope_definitional_identities(cfg):
    with precision(256):
        pi = Enclosure.pi()
        # at nu=0 the difference upper - lower is c0 * 2 e^{-9 pi y/4}
        diff = upper_envelope(1, 0, cfg) - lower_envelope(1, 0, cfg)
        assert diff.intersects(Enclosure(Fraction(1, 100000)) * 2 * (-(9 * pi / 4)).exp())
        # at (y=2, nu=2): c2 * 2 * 81 pi^2 e^{-9 pi/2} / 16
        diff2 = upper_envelope(2, 2, cfg) - lower_envelope(2, 2, cfg)
        expected = Enclosure(Fraction(8, 100000)) * 2 * Enclosure(81) * pi ** 2 * (
            -(9 * pi / 2)
        ).exp() / 16
        assert diff2.intersects(expected)
        # at (y=1, nu=3) the second-term coefficient is 2 * 1.0003 * 9^3 pi^3 / 4^3
        coeff = Enclosure("1.0003") * 2 * Enclosure(729) * pi ** 3 / 64
        up = upper_envelope(1, 3, cfg)
        first = 2 * pi ** 3 / 64 * (-(pi / 4)).exp()
        assert (up - first).intersects(coeff * (-(9 * pi / 4)).exp())


def test_sandwich_on_default_grid(cfg):
    grid = log_grid(1.0, 100.0, 40)
    for nu in range(4):
        report = verify_sandwich(grid, nu, cfg)
        assert report.status is Status.CERTIFIED, report.summary()


def test_sandwich_single_point_high_order(cfg):
    report = verify_sandwich([Enclosure(1)], 3, cfg)
    assert report.status is Status.CERTIFIED


def test_sandwich_fails_without_inflation(cfg):
    # with c_nu = 0 the upper envelope equals the two-term lower bound,
    # which the true value strictly exceeds: the check must fail
    zeroish = EnvelopeConstants(
        c0=Fraction(1, 10 ** 30),
        c1=Fraction(1, 10 ** 30),
        c2=Fraction(1, 10 ** 30),
        c3=Fraction(1, 10 ** 30),
    )
    for nu in range(4):
        report = verify_sandwich([Enclosure(1)], nu, cfg, constants=zeroish)
        assert report.status is Status.FAILED, f"nu={nu} should fail with deflated constants"


def test_tail_integral_closed_forms(cfg):
    with precision(256):
        pi = Enclosure.pi()
        # nu = 0: (4/pi) e^{-6 pi}
        e0 = tail_integral(0, 1, cfg)
        assert e0.intersects((4 / pi) * (-(6 * pi)).exp())
        # nu = 1: e^{-6 pi} (24/s + 1/s^2), s = pi/4
        s = pi / 4
        e1 = tail_integral(1, 1, cfg)
        assert e1.intersects((-(6 * pi)).exp() * (24 / s + 1 / s ** 2))
    # monotone in y
    assert tail_integral(3, 2, cfg).hi < tail_integral(3, 1, cfg).lo
    assert tail_integral(3, 2, cfg).is_strictly_positive()


def test_tail_integral_against_quadrature(cfg):
    # independent oracle: adaptive numerical quadrature at high precision
    with mp.workprec(300):
        for nu in range(4):
            oracle = mp.quad(lambda t: t ** nu * mp.e ** (-mp.pi * t / 4), [24, mp.inf])
            enc = tail_integral(nu, 1, cfg)
            with precision(300):
                assert enc.contains(oracle) or abs(enc - Enclosure(oracle)).hi < 1e-40


def test_admissibility_factors_against_oracle(cfg):
    for nu in range(4):
        fac = admissibility_factor(nu, 1, cfg)
        assert_contains(fac, ADMISSIBILITY_FACTORS[nu], slack=1e-33)


def test_admissibility_certified_for_paper_constants(cfg):
    for nu in range(4):
        report = check_c_admissible(nu, cfg)
        assert report.status is Status.CERTIFIED, report.summary()


def test_admissibility_fails_for_too_small_candidate(cfg):
    report = check_c_admissible(0, cfg, candidate=Fraction(1, 10 ** 7))
    assert report.status is Status.FAILED


def test_admissibility_tightness_third_fails(cfg):
    # c_nu / 3 is inadmissible for every order (the factors sit at
    # 0.97, 0.91, 0.96, 0.72 of their constants)
    fails = 0
    for nu in range(4):
        c = EnvelopeConstants().for_order(nu) / 3
        report = check_c_admissible(nu, cfg, candidate=c)
        fails += report.status is Status.FAILED
    assert fails == 4


def test_envelopes_strictly_decreasing(cfg):
    for nu in range(4):
        for upper in (False, True):
            rep = certify_sign(
                lambda box, c, nu=nu, upper=upper: envelope_derivative(box, nu, c, upper=upper),
                (1, 100),
                -1,
                cfg,
                name=f"envelope-decay-nu{nu}-{'upper' if upper else 'lower'}",
            )
            assert rep.certified


def test_log_grid_shape():
    grid = log_grid(1.0, 100.0, 40)
    assert len(grid) == 40
    assert float(grid[0].lo) == pytest.approx(1.0)
    assert float(grid[-1].hi) == pytest.approx(100.0)
    assert all(b.lo > a.lo for a, b in zip(grid, grid[1:]))
    with pytest.raises(ValueError):
        log_grid(1.0, 2.0, 1)
