"""The transformation theta4(y) = y^(-1/2) theta2(1/y) and what it buys.

Two things live here:

* ``theta4_via_modular`` evaluates theta4 and its first three derivatives
  at small arguments by differentiating the transformation, with the
  coefficient table re-derived independently (see the unit tests for the
  finite-difference and cross-representation checks):

      nu=0:  (1)                       against y^(-1/2 - nu - j) theta2^(j)(1/y)
      nu=1:  (-1/2, -1)
      nu=2:  (3/4,  3,  1)
      nu=3:  (-15/8, -45/4, -15/2, -1)

* Cancellation-free small-y evaluators for f, f', f''.  Writing
  theta2(x) = 2 e^{-pi x/4} Q(x) with Q(x) = 1 + sum_j e^{-pi j(j+1) x}
  and G = Q'/Q gives, for x = 1/y,

      f(y)   = -y/2 + pi/4 - G(x)
      f'(y)  = -1/2 + x^2 G'(x)
      f''(y) = -2 x^3 G'(x) - x^4 G''(x)

  The constant -pi/4 part of (log theta2)' is subtracted exactly at the
  series level, so these forms keep full relative accuracy where the
  direct Lambert sums lose all significance to cancellation (f'' near 0
  is a ~1e-47-sized difference of O(1) quantities already at y = 0.05).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .certify import CertificationReport, Check, Status
from .enclosure import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    Enclosure,
    EvalConfig,
    as_enclosure,
)
from .theta import geometric_tail, theta2_series, theta4_series, _check_order, _check_positive

__all__ = [
    "MODULAR_COEFFICIENTS",
    "theta4_via_modular",
    "theta2_via_modular",
    "theta4_eval",
    "verify_modular_identity",
    "f_modular",
    "f_prime_modular",
    "f_second_modular",
    "q_series_derivatives",
]

#: coefficient of y^(-1/2 - nu - j) * theta2^(j)(1/y) in theta4^(nu)(y)
MODULAR_COEFFICIENTS: dict[int, tuple[Fraction, ...]] = {
    0: (Fraction(1),),
    1: (Fraction(-1, 2), Fraction(-1)),
    2: (Fraction(3, 4), Fraction(3), Fraction(1)),
    3: (Fraction(-15, 8), Fraction(-45, 4), Fraction(-15, 2), Fraction(-1)),
}

#: below this argument the public theta4 evaluator switches to the modular route
SMALL_Y_SPLIT = Fraction(1, 5)


def theta4_via_modular(y, nu: int = 0, cfg: EvalConfig = DEFAULT_CONFIG, coefficients=None) -> Enclosure:
    """theta4^(nu)(y) through theta2 derivatives at 1/y.

    `coefficients` may override the table (used by mutation tests to show a
    corrupted coefficient is caught by the cross-representation check).
    """
    nu = _check_order(nu)
    table = MODULAR_COEFFICIENTS if coefficients is None else coefficients
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "theta4_via_modular")
        x = 1 / y
        total = Enclosure(0)
        for j, coeff in enumerate(table[nu]):
            power = y ** (Fraction(-1, 2) - nu - j)
            total = total + Enclosure(coeff) * power * theta2_series(x, j, cfg)
        return total


def theta2_via_modular(x, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """theta2(x) = x^(-1/2) theta4(1/x); the same relation read backwards."""
    with cfg.scope():
        x = _check_positive(as_enclosure(x), "theta2_via_modular")
        return x ** Fraction(-1, 2) * theta4_series(1 / x, 0, cfg)


def theta4_eval(y, nu: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Public theta4 evaluation: direct series for y >= 0.2, modular below.

    The direct series stays valid for any y > 0 but its term count grows
    like 1/y; the modular route maps y < 0.2 to arguments 1/y > 5 where a
    handful of terms suffice.
    """
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "theta4_eval")
        if y.hi * 5 < 1:  # y < SMALL_Y_SPLIT = 1/5
            return theta4_via_modular(y, nu, cfg)
        return theta4_series(y, nu, cfg)


def verify_modular_identity(
    interval,
    nu: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    samples: int = 9,
    coefficients=None,
    width_bound: float = 2.0 ** -80,
) -> CertificationReport:
    """Certify that the modular and direct routes agree on sampled points.

    At each sample the two enclosures must intersect (they both contain the
    exact value, so disjointness proves a formula error) with combined width
    below `width_bound`.  Overly wide enclosures yield `inconclusive`.
    """
    nu = _check_order(nu)
    with cfg.scope():
        lo = as_enclosure(interval[0])
        hi = as_enclosure(interval[1])
        if not lo.is_strictly_positive():
            raise DomainError("modular identity check requires a positive interval")
        checks = []
        status = Status.CERTIFIED
        la, lb = math.log(float(lo.lo)), math.log(float(hi.hi))
        for i in range(samples):
            t = la + (lb - la) * i / max(samples - 1, 1)
            y = Enclosure(math.exp(t))
            via_flip = theta4_via_modular(y, nu, cfg, coefficients)
            direct = theta4_series(y, nu, cfg)
            agree = via_flip.intersects(direct)
            widths_ok = (via_flip.width + direct.width) < width_bound
            if agree and widths_ok:
                checks.append(Check(f"agreement at y={y.lo}", True, ""))
            elif not agree:
                status = Status.FAILED
                checks.append(
                    Check(
                        f"agreement at y={y.lo}",
                        False,
                        f"modular={via_flip!r} direct={direct!r} are disjoint",
                    )
                )
            else:
                if status is Status.CERTIFIED:
                    status = Status.INCONCLUSIVE
                checks.append(Check(f"agreement at y={y.lo}", None, "combined width too large"))
    return CertificationReport(
        name=f"modular-identity-nu{nu}",
        status=status,
        interval=(lo.lo, hi.hi),
        checks=checks,
    )


def q_series_derivatives(x, cfg: EvalConfig = DEFAULT_CONFIG, orders: int = 3):
    """Enclosures of Q, Q', Q'', Q''' for Q(x) = 1 + sum_{j>=1} e^{-pi j(j+1) x}.

    The r-th derivative term is (-pi j(j+1))^r e^{-pi j(j+1) x}; all terms of
    a given order share the sign (-1)^r, and the tail ratio between
    consecutive j is ((j+2)/j)^r e^{-2 pi (j+1) x} < 1.
    """
    with cfg.scope():
        x = _check_positive(as_enclosure(x), "q_series_derivatives")
        pi = Enclosure.pi()
        xlo = Enclosure._from_mpi((x._lo, x._lo))
        sums = [Enclosure(1)] + [Enclosure(0) for _ in range(orders)]
        for j in range(1, cfg.max_terms + 1):
            c = j * (j + 1)
            base = (-(Enclosure(c) * pi * x)).exp()
            factor = Enclosure(1)
            for r in range(orders + 1):
                if r:
                    factor = factor * -(Enclosure(c) * pi)
                sums[r] = sums[r] + factor * base
            if base.hi <= cfg.tol / 4:
                c_next = (j + 1) * (j + 2)
                ok = True
                bounds = []
                for r in range(orders + 1):
                    first = (Enclosure(c_next) * pi) ** r * (-(Enclosure(c_next) * pi * xlo)).exp()
                    ratio = Enclosure(Fraction(j + 3, j + 1)) ** r * (
                        -(2 * Enclosure(j + 2) * pi * xlo)
                    ).exp()
                    try:
                        b = geometric_tail(first, ratio)
                    except ConvergenceError:
                        ok = False
                        break
                    if b.hi > cfg.tol:
                        ok = False
                        break
                    bounds.append(b.hi)
                if ok:
                    out = []
                    for r in range(orders + 1):
                        tail = Enclosure(0, bounds[r])
                        if r % 2 == 1:
                            tail = -tail
                        out.append(sums[r] + tail)
                    return tuple(out)
        raise ConvergenceError(
            f"Q-series did not reach tail tolerance within {cfg.max_terms} terms"
        )


def _g_derivatives(x, cfg: EvalConfig):
    """G' and G'' for G = Q'/Q (the exponentially small part of (log theta2)')."""
    q0, q1, q2, q3 = q_series_derivatives(x, cfg, orders=3)
    g = q1 / q0
    g1 = q2 / q0 - g * g
    g2 = q3 / q0 - 3 * (q2 / q0) * g + 2 * g ** 3
    return g, g1, g2


def f_modular(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f(y) = -y/2 + pi/4 - G(1/y); exact form of y^2 (log theta4)' under the flip."""
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "f_modular")
        g, _, _ = _g_derivatives(1 / y, cfg)
        return -y / 2 + Enclosure.pi() / 4 - g


def f_prime_modular(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f'(y) = -1/2 + x^2 G'(x) at x = 1/y."""
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "f_prime_modular")
        x = 1 / y
        _, g1, _ = _g_derivatives(x, cfg)
        return Enclosure(Fraction(-1, 2)) + x * x * g1


def f_second_modular(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f''(y) = -2 x^3 G'(x) - x^4 G''(x) at x = 1/y.

    G' > 0 and G'' < 0 are each one-signed sums sharing the common scale
    e^{-2 pi x}, so the combination loses only the benign factor
    (pi x - 1)/(pi x); no catastrophic cancellation for x >= 1/2.
    """
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "f_second_modular")
        x = 1 / y
        _, g1, g2 = _g_derivatives(x, cfg)
        x3 = x ** 3
        return -(2 * x3 * g1) - x3 * x * g2
