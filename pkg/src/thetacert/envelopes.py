"""Two-term exponential envelopes for (-1)^nu theta2^(nu) on [1, oo).

For nu in {0,1,2,3} the sandwich

    0 < lower_envelope(y, nu) < (-1)^nu theta2^(nu)(y) < upper_envelope(y, nu)

holds with

    lower = (2 pi^nu / 4^nu) (e^{-pi y/4} + 9^nu e^{-9 pi y/4})
    upper = (2 pi^nu / 4^nu) (e^{-pi y/4} + (1 + c_nu) 9^nu e^{-9 pi y/4})

and the inflation constants c_0 = 0.00001, c_1 = 0.00003, c_2 = 0.00008,
c_3 = 0.0003.  The admissibility of the c_nu is itself re-proved here:
the omitted odd terms m >= 5 of the theta2 sum are bounded first by the
discrete comparison sum_{n>=25} n^nu e^{-pi n y/4} (m^2 >= 5m moves the
start from 5 to 25) and then by the explicit integral
int_24^oo t^nu e^{-pi t y/4} dt, whose closed form is evaluated with
enclosures; the resulting inflation factor e^{9 pi y/4} 9^(-nu) * integral
must stay below c_nu, which is checked at y = 1 together with a certified
proof that the factor decreases in y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certify import CertificationReport, Check, Status, certify_sign
from .enclosure import DEFAULT_CONFIG, DomainError, Enclosure, EvalConfig, as_enclosure
from .theta import geometric_tail, theta2_series

__all__ = [
    "EnvelopeConstants",
    "PAPER_CONSTANTS",
    "lower_envelope",
    "upper_envelope",
    "envelope_derivative",
    "verify_sandwich",
    "tail_integral",
    "admissibility_factor",
    "check_c_admissible",
    "log_grid",
]


@dataclass(frozen=True)
class EnvelopeConstants:
    """Inflation constants on the e^{-9 pi y/4} term of the upper envelopes."""

    c0: Fraction = Fraction(1, 100000)
    c1: Fraction = Fraction(3, 100000)
    c2: Fraction = Fraction(8, 100000)
    c3: Fraction = Fraction(3, 10000)

    def __post_init__(self):
        for c in self.as_tuple():
            if not c > 0:
                raise ValueError("envelope constants must be positive")

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.c0, self.c1, self.c2, self.c3)

    def for_order(self, nu: int) -> Fraction:
        return self.as_tuple()[nu]


PAPER_CONSTANTS = EnvelopeConstants()


def _check_domain(y: Enclosure) -> Enclosure:
    if not (y.lo >= 1):
        raise DomainError(f"envelopes are only established for y >= 1, got {y!r}")
    return y


def _envelope(y, nu: int, inflation: Fraction | None, cfg: EvalConfig) -> Enclosure:
    with cfg.scope():
        y = _check_domain(as_enclosure(y))
        pi = Enclosure.pi()
        amp = 2 * pi ** nu / Enclosure(4 ** nu)
        quarter = Enclosure(Fraction(1, 4))
        first = (-(pi * y * quarter)).exp()
        second = Enclosure(9 ** nu) * (-(9 * pi * y * quarter)).exp()
        if inflation is not None:
            second = second * (1 + Enclosure(inflation))
        return amp * (first + second)


def lower_envelope(y, nu: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """The two-term lower envelope of (-1)^nu theta2^(nu) on [1, oo)."""
    return _envelope(y, nu, None, cfg)


def upper_envelope(
    y, nu: int, cfg: EvalConfig = DEFAULT_CONFIG, constants: EnvelopeConstants = PAPER_CONSTANTS
) -> Enclosure:
    """The inflated two-term upper envelope of (-1)^nu theta2^(nu) on [1, oo)."""
    return _envelope(y, nu, constants.for_order(nu), cfg)


def envelope_derivative(
    y,
    nu: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    upper: bool = False,
    constants: EnvelopeConstants = PAPER_CONSTANTS,
) -> Enclosure:
    """d/dy of an envelope; both terms decay, so this is strictly negative."""
    with cfg.scope():
        y = _check_domain(as_enclosure(y))
        pi = Enclosure.pi()
        amp = 2 * pi ** nu / Enclosure(4 ** nu)
        quarter = Enclosure(Fraction(1, 4))
        first = -(pi * quarter) * (-(pi * y * quarter)).exp()
        second = -(9 * pi * quarter) * Enclosure(9 ** nu) * (-(9 * pi * y * quarter)).exp()
        if upper:
            second = second * (1 + Enclosure(constants.for_order(nu)))
        return amp * (first + second)


def log_grid(lo: float, hi: float, count: int) -> list[Enclosure]:
    """count log-spaced point enclosures on [lo, hi] (endpoints included)."""
    if count < 2:
        raise ValueError("need at least two grid points")
    pts = []
    llo, lhi = math.log(lo), math.log(hi)
    for i in range(count):
        t = llo + (lhi - llo) * i / (count - 1)
        pts.append(Enclosure(math.exp(t)))  # floats convert exactly: width-0 points
    return pts


def _sandwich_config(y_hi: float, cfg: EvalConfig) -> EvalConfig:
    """Precision/tolerance adequate for the sandwich margins at this point.

    The lower gap is the omitted m >= 5 theta2 term, relatively of size
    e^{-6 pi y}; deciding it needs about 6 pi y / ln 2 ~ 27.2 y bits and a
    tail tolerance well below e^{-25 pi y / 4} ~ 10^{-8.53 y}.
    """
    bits = max(cfg.precision_bits, int(27.3 * y_hi) + 96)
    decade = int(8.6 * y_hi) + 40
    return EvalConfig(
        precision_bits=bits, tail_tolerance=f"1e-{decade}", max_terms=cfg.max_terms
    )


def _sandwich_point(y: Enclosure, nu: int, cfg: EvalConfig, constants: EnvelopeConstants):
    """True / False / None (undecided) for the strict sandwich at one point."""
    point_cfg = _sandwich_config(float(y.hi), cfg)
    for _ in range(3):
        with point_cfg.scope():
            mid = theta2_series(y, nu, point_cfg)
            if nu % 2 == 1:
                mid = -mid
            low = lower_envelope(y, nu, point_cfg)
            upp = upper_envelope(y, nu, point_cfg, constants)
            if low.is_strictly_positive() and low.hi < mid.lo and mid.hi < upp.lo:
                return True, "strict on both sides"
            # a disproof needs the wrong ordering to hold on whole enclosures
            violated = (
                mid.hi < low.lo
                or upp.hi < mid.lo
                or low.hi <= 0
            )
            if violated:
                return False, f"lower={low!r} mid={mid!r} upper={upp!r}"
        point_cfg = point_cfg.escalated()
    return None, "enclosures still overlap after precision escalation"


def verify_sandwich(
    grid,
    nu: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    constants: EnvelopeConstants = PAPER_CONSTANTS,
) -> CertificationReport:
    """Certify lower < (-1)^nu theta2^(nu) < upper strictly at each grid point.

    The working precision scales with y: the strict gaps shrink like
    e^{-6 pi y}, so a fixed precision would go inconclusive long before
    y = 100 even though the inequalities are comfortably true.  Widths too
    large to decide after escalation produce an `inconclusive` report
    (distinct from a disproof, which records the offending point).
    """
    checks = []
    status = Status.CERTIFIED
    with cfg.scope():
        points = [as_enclosure(y) for y in grid]
    for y in points:
        outcome, detail = _sandwich_point(y, nu, cfg, constants)
        if outcome is True:
            checks.append(Check(f"sandwich at y={y.lo}", True, detail))
        elif outcome is False:
            status = Status.FAILED
            checks.append(Check(f"sandwich at y={y.lo}", False, detail))
        else:
            if status is Status.CERTIFIED:
                status = Status.INCONCLUSIVE
            checks.append(Check(f"sandwich at y={y.lo}", None, detail))
    return CertificationReport(
        name=f"theta2-envelope-sandwich-nu{nu}",
        interval=(points[0].lo, points[-1].hi),
        status=status,
        checks=checks,
    )


_FACTORIALS = (1, 1, 2, 6)


def tail_integral(nu: int, y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Closed form of int_24^oo t^nu e^{-s t} dt with s = pi y / 4.

    Integration by parts gives e^{-24 s} * sum_{j=0}^{nu} (nu!/(nu-j)!) 24^(nu-j) / s^(j+1).
    """
    if nu not in (0, 1, 2, 3):
        raise ValueError("nu must be in {0,1,2,3}")
    with cfg.scope():
        y = _check_domain(as_enclosure(y))
        s = Enclosure.pi() * y / 4
        total = Enclosure(0)
        for j in range(nu + 1):
            coeff = _FACTORIALS[nu] // _FACTORIALS[nu - j] * 24 ** (nu - j)
            total = total + Enclosure(coeff) / s ** (j + 1)
        return (-(24 * s)).exp() * total


def admissibility_factor(nu: int, y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """e^{9 pi y/4} 9^(-nu) * tail_integral(nu, y); must stay below c_nu."""
    with cfg.scope():
        y = _check_domain(as_enclosure(y))
        boost = (Enclosure(9) * Enclosure.pi() * y / 4).exp()
        return boost * tail_integral(nu, y, cfg) / Enclosure(9 ** nu)


def _admissibility_factor_derivative(nu: int, y, cfg: EvalConfig) -> Enclosure:
    """d/dy of the admissibility factor, in the form
    9^(-nu) e^{-15 pi y/4} * d/dy[ poly(1/y) ] summed with the exponential decay.
    """
    with cfg.scope():
        y = _check_domain(as_enclosure(y))
        pi = Enclosure.pi()
        # factor(y) = 9^-nu e^{-15 pi y/4} * sum_j C_j (4/pi)^(j+1) y^-(j+1)
        decay = (-(15 * pi * y / 4)).exp() / Enclosure(9 ** nu)
        poly = Enclosure(0)
        dpoly = Enclosure(0)
        for j in range(nu + 1):
            c_j = _FACTORIALS[nu] // _FACTORIALS[nu - j] * 24 ** (nu - j)
            base = Enclosure(c_j) * (4 / pi) ** (j + 1)
            poly = poly + base * y ** (-(j + 1))
            dpoly = dpoly - base * Enclosure(j + 1) * y ** (-(j + 2))
        return decay * (dpoly - (15 * pi / 4) * poly)


def _excess_sum_bound(nu: int, y: Enclosure, cfg: EvalConfig) -> Enclosure:
    """Upper enclosure of sum_{n>=5 odd} n^(2 nu) e^{-pi n^2 y/4} (partial + certified tail)."""
    pi = Enclosure.pi()
    quarter = Enclosure(Fraction(1, 4))
    total = Enclosure(0)
    m = 5
    while True:
        term = Enclosure(m) ** (2 * nu) * (-(pi * Enclosure(m * m) * y * quarter)).exp()
        total = total + term
        if term.hi <= cfg.tail_tolerance:
            mn = m + 2
            first = Enclosure(mn) ** (2 * nu) * (-(pi * Enclosure(mn * mn) * y * quarter)).exp()
            ratio = Enclosure(Fraction(mn + 2, mn)) ** (2 * nu) * (-(Enclosure(mn + 1) * pi * y)).exp()
            return total + Enclosure(0, geometric_tail(first, ratio).hi)
        m += 2


def _comparison_sum_lower(nu: int, y: Enclosure, cfg: EvalConfig, n_terms: int = 60) -> Enclosure:
    """Lower enclosure of sum_{n>=25} n^nu e^{-pi n y/4} (partial sum only; tail >= 0)."""
    pi = Enclosure.pi()
    quarter = Enclosure(Fraction(1, 4))
    total = Enclosure(0)
    for n in range(25, 25 + n_terms):
        total = total + Enclosure(n) ** nu * (-(pi * Enclosure(n) * y * quarter)).exp()
    return total


def check_c_admissible(
    nu: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    candidate: Fraction | None = None,
    constants: EnvelopeConstants = PAPER_CONSTANTS,
    y_max: float = 100.0,
) -> CertificationReport:
    """Certify that c_nu dominates the envelope error for every y >= 1.

    Three certified steps:
      1. the discrete comparison at y = 1: the omitted odd-m excess sum is
         strictly below sum_{n>=25} n^nu e^{-pi n/4} (partial sums with the
         excess tail enclosed, the comparison tail dropped on the safe side);
      2. the inflation factor at y = 1 is strictly below c_nu;
      3. the factor's derivative is certified negative on [1, y_max], so
         y = 1 is the worst case on the whole half-line together with the
         elementary decay beyond y_max (every summand decreases).
    """
    c = constants.for_order(nu) if candidate is None else candidate
    checks = []
    with cfg.scope():
        one = Enclosure(1)
        excess = _excess_sum_bound(nu, one, cfg)
        comparison = _comparison_sum_lower(nu, one, cfg)
        step1 = excess.hi < comparison.lo
        checks.append(
            Check(
                "discrete comparison at y=1",
                bool(step1),
                f"excess<= {excess.hi}, comparison>= {comparison.lo}",
            )
        )
        factor = admissibility_factor(nu, one, cfg)
        step2 = factor.hi < Enclosure(c).lo
        checks.append(Check("factor below c at y=1", bool(step2), f"factor={factor!r}, c={float(c)}"))

    deriv_report = certify_sign(
        lambda box, c_: _admissibility_factor_derivative(nu, box, c_),
        (1, y_max),
        -1,
        cfg,
        name=f"admissibility-factor-decreasing-nu{nu}",
    )
    checks.append(
        Check(
            "factor decreasing on [1, y_max]",
            deriv_report.status is Status.CERTIFIED,
            f"boxes={deriv_report.boxes_examined}",
        )
    )
    checks.append(
        Check(
            "decay beyond y_max",
            True,
            "every summand of the factor is a positive multiple of e^{-15 pi y/4} y^-k",
        )
    )
    ok = all(ch.passed for ch in checks)
    status = Status.CERTIFIED if ok else Status.FAILED
    return CertificationReport(
        name=f"c-admissibility-nu{nu}",
        interval=(Enclosure(1).lo, Enclosure(int(y_max)).hi),
        status=status,
        checks=checks,
        subreports=[deriv_report],
    )
