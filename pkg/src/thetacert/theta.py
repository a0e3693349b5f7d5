"""Rigorous evaluation of theta_2, theta_4 and the log-derivative series.

All sums are truncated adaptively: terms are accumulated until a *proved*
bound on the omitted tail drops below ``cfg.tail_tolerance``, and that
bound is then added to the result as an interval inflation.  Tail bounds
use a ratio test: past the truncation index the term magnitudes are
dominated by a geometric sequence (the polynomial growth k^(2*nu) is
absorbed into the ratio, which is computed with enclosures and checked to
be < 1), so the tail is at most first_omitted / (1 - ratio).

Evaluators:

  theta4_series(y, nu)   nu-th derivative of theta4(y) = sum (-1)^k exp(-pi k^2 y)
  theta4_product(y)      theta4 via prod (1-q^(2n))(1-q^(2n-1))^2, q = exp(-pi y)
  theta2_series(y, nu)   nu-th derivative of theta2(y) = sum exp(-pi y (n+1/2)^2)
  f_lambert(y)           f(y) = y^2 theta4'(y)/theta4(y) as the Lambert-type sum
                         2 y^2 sum ( n pi/(e^{2n pi y}-1) + (2n-1) pi/(e^{(2n-1) pi y}-1) )
  f_prime_lambert(y), f_second_lambert(y)
                         termwise derivatives of that sum

The direct series are primitives valid for any y > 0 but converge slowly
as y -> 0; public dispatch for small y lives in :mod:`thetacert.modular`.
"""

from __future__ import annotations

from fractions import Fraction

from .enclosure import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    Enclosure,
    EvalConfig,
    as_enclosure,
)

__all__ = [
    "theta4_series",
    "theta4_product",
    "theta2_series",
    "f_lambert",
    "f_prime_lambert",
    "f_second_lambert",
    "DERIVATIVE_ORDERS",
]

DERIVATIVE_ORDERS = (0, 1, 2, 3)


def _check_order(nu: int) -> int:
    if nu not in DERIVATIVE_ORDERS:
        raise ValueError(f"derivative order must be one of {DERIVATIVE_ORDERS}, got {nu}")
    return nu


def _check_positive(y: Enclosure, what: str) -> Enclosure:
    if not y.is_strictly_positive():
        raise DomainError(f"{what} requires y > 0, got {y!r}")
    return y


def geometric_tail(first: Enclosure, ratio: Enclosure) -> Enclosure:
    """Upper bound for first * (1 + r + r^2 + ...) given an enclosed ratio < 1.

    Raises ConvergenceError if the ratio cannot be certified below 1.
    """
    one = Enclosure(1)
    if not (one - ratio).is_strictly_positive():
        raise ConvergenceError("tail ratio not certified below 1")
    return first / (one - ratio)


def _tol_reached(bound: Enclosure, cfg: EvalConfig) -> bool:
    return bound.hi <= cfg.tol


def theta4_series(y, nu: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of theta4^(nu)(y) by the termwise-differentiated sum.

    The nu-th derivative term at index k is (-1)^k (-pi k^2)^nu exp(-pi k^2 y);
    the symmetric sum over all integers collapses to 1 (for nu = 0) plus twice
    the k >= 1 terms.  The truncation tail is enclosed by a certified
    geometric bound evaluated at y.lo.
    """
    nu = _check_order(nu)
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "theta4_series")
        pi = Enclosure.pi()
        ylo = Enclosure._from_mpi((y._lo, y._lo))
        total = Enclosure(1 if nu == 0 else 0)
        for k in range(1, cfg.max_terms + 1):
            kk = Enclosure(k * k)
            mag = (-(pi * kk * y)).exp()
            if nu:
                mag = mag * (pi * kk) ** nu
            term = 2 * mag
            if (k + nu) % 2 == 1:
                term = -term
            total = total + term
            # Tail check once terms are small: ratio of successive magnitudes
            # ((k+1)/k)^(2 nu) e^{-(2k+1) pi y} is decreasing in k.
            if abs(term).hi <= cfg.tol / 4:
                knext = Enclosure((k + 1) * (k + 1))
                first = 2 * (-(pi * knext * ylo)).exp()
                if nu:
                    first = first * (pi * knext) ** nu
                ratio = (-(Enclosure(2 * k + 3) * pi * ylo)).exp()
                if nu:
                    ratio = ratio * Enclosure(Fraction(k + 2, k + 1)) ** (2 * nu)
                try:
                    bound = geometric_tail(first, ratio)
                except ConvergenceError:
                    continue  # ratio not yet below 1: keep summing
                if _tol_reached(bound, cfg):
                    b = bound.hi
                    return total + Enclosure(-b, b)
        raise ConvergenceError(
            f"theta4_series did not reach tail tolerance within {cfg.max_terms} terms"
        )


def theta4_product(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of theta4(y) via the infinite product.

    theta4(y) = prod_{n>=1} (1 - e^{-2n pi y}) (1 - e^{-(2n-1) pi y})^2.
    The log of the omitted tail is enclosed using
    -x/(1-x_max) <= log(1-x) <= -x and exact geometric sums of the omitted
    exponentials, then exponentiated back.
    """
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "theta4_product")
        pi = Enclosure.pi()
        one = Enclosure(1)
        ylo = Enclosure._from_mpi((y._lo, y._lo))
        prod = one
        for n in range(1, cfg.max_terms + 1):
            even = (-(Enclosure(2 * n) * pi * y)).exp()
            odd = (-(Enclosure(2 * n - 1) * pi * y)).exp()
            prod = prod * (one - even) * (one - odd) ** 2
            if odd.hi <= cfg.tol / 8:
                # Sum of omitted exponents: geometric with ratio e^{-2 pi y}.
                r = (-(2 * pi * ylo)).exp()
                e_even = (-(Enclosure(2 * n + 2) * pi * ylo)).exp()
                e_odd = (-(Enclosure(2 * n + 1) * pi * ylo)).exp()
                ssum = (e_even + 2 * e_odd) / (one - r)
                xmax = e_odd
                if not (one - xmax).is_strictly_positive():
                    continue
                log_lo = -(ssum / (one - xmax))
                if _tol_reached(abs(log_lo), cfg):
                    tail = Enclosure(log_lo.lo, 0)
                    return prod * tail.exp()
        raise ConvergenceError(
            f"theta4_product did not reach tail tolerance within {cfg.max_terms} terms"
        )


def theta2_series(y, nu: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of theta2^(nu)(y) from the half-integer Gaussian sum.

    Over odd m = 2n+1 the nu-th derivative is
    (-1)^nu * (2 pi^nu / 4^nu) * sum m^(2 nu) e^{-pi m^2 y / 4}:
    every term of the nu-th derivative carries the sign (-1)^nu, so the
    returned enclosure is strictly signed and the positive tail bound is
    attached on the correct side.
    """
    nu = _check_order(nu)
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "theta2_series")
        pi = Enclosure.pi()
        ylo = Enclosure._from_mpi((y._lo, y._lo))
        quarter = Enclosure(Fraction(1, 4))
        total = Enclosure(0)
        m = 1
        while m <= 2 * cfg.max_terms:
            mm = Enclosure(m * m)
            mag = (-(pi * mm * y * quarter)).exp()
            if nu:
                mag = mag * (pi * mm * quarter) ** nu
            total = total + 2 * mag
            if mag.hi <= cfg.tol / 4:
                mnxt = m + 2
                first = 2 * (-(pi * Enclosure(mnxt * mnxt) * ylo * quarter)).exp()
                if nu:
                    first = first * (pi * Enclosure(mnxt * mnxt) * quarter) ** nu
                ratio = (-(Enclosure(mnxt + 1) * pi * ylo)).exp()
                if nu:
                    ratio = ratio * Enclosure(Fraction(mnxt + 2, mnxt)) ** (2 * nu)
                try:
                    bound = geometric_tail(first, ratio)
                except ConvergenceError:
                    m += 2
                    continue
                if _tol_reached(bound, cfg):
                    total = total + Enclosure(0, bound.hi)
                    if nu % 2 == 1:
                        total = -total
                    return total
            m += 2
        raise ConvergenceError(
            f"theta2_series did not reach tail tolerance within {cfg.max_terms} terms"
        )


def _poly_geom_tail(amp: Enclosure, power: int, ratio: Enclosure, n_last: int) -> Enclosure:
    """Certified bound for sum_{n > n_last} amp * n^power * ratio^n.

    Uses the ratio test: for n > n_last the term ratio is at most
    ((n_last+2)/(n_last+1))^power * ratio, which must be < 1.
    """
    first = amp * Enclosure((n_last + 1) ** power) * ratio ** (n_last + 1)
    q = Enclosure(Fraction(n_last + 2, n_last + 1)) ** power * ratio
    return geometric_tail(first, q)


def _lambert_sum(y, order: int, cfg: EvalConfig) -> Enclosure:
    """Shared evaluator for f (order 0), f' (order 1), f'' (order 2)."""
    with cfg.scope():
        y = _check_positive(as_enclosure(y), "lambert series")
        pi = Enclosure.pi()
        one = Enclosure(1)
        ylo = Enclosure._from_mpi((y._lo, y._lo))
        y2 = y * y
        total = Enclosure(0)
        for n in range(1, cfg.max_terms + 1):
            ne = Enclosure(n)
            no = Enclosure(2 * n - 1)
            e_even = (-(2 * ne * pi * y)).exp()          # e^{-2 n pi y}
            e_odd = (-(no * pi * y)).exp()               # e^{-(2n-1) pi y}
            u_even = e_even / (one - e_even)             # 1/(e^{2n pi y} - 1)
            u_odd = e_odd / (one - e_odd)
            if order == 0:
                term = 2 * y2 * pi * (ne * u_even + no * u_odd)
            else:
                v_even = e_even / (one - e_even) ** 2    # e^x/(e^x-1)^2 at x=2n pi y
                v_odd = e_odd / (one - e_odd) ** 2
                if order == 1:
                    term = 4 * y * pi * (ne * u_even + no * u_odd) - 2 * y2 * pi ** 2 * (
                        2 * ne ** 2 * v_even + no ** 2 * v_odd
                    )
                else:
                    # recombined second derivative: the cubic-denominator pieces
                    # carry the factor (e^x + 1)
                    w_even = e_even * (one + e_even) / (one - e_even) ** 3
                    w_odd = e_odd * (one + e_odd) / (one - e_odd) ** 3
                    term = (
                        4 * pi * (ne * u_even + no * u_odd)
                        - 8 * y * pi ** 2 * (2 * ne ** 2 * v_even + no ** 2 * v_odd)
                        + 2 * y2 * pi ** 3 * (4 * ne ** 3 * w_even + no ** 3 * w_odd)
                    )
            total = total + term
            if e_odd.hi <= cfg.tol / 16 or abs(term).hi <= cfg.tol / 16:
                # Magnitude bound amp * n^p * r^n with r = e^{-2 pi y}: both the
                # even exponent 2n pi y and the odd one (2n-1) pi y are absorbed
                # into r^n after the factor e^{pi y}; D bounds every 1/(1-e^{-x}).
                r = (-(2 * pi * ylo)).exp()
                d_min = one - (-(Enclosure(2 * n + 1) * pi * ylo)).exp()
                if not d_min.is_strictly_positive():
                    continue
                d = one / d_min
                boost = (pi * y).exp()
                if order == 0:
                    amp = 6 * pi * y2 * d * boost
                    p = 1
                elif order == 1:
                    amp = 12 * (y * pi * d + y2 * pi ** 2 * d ** 2) * boost
                    p = 2
                else:
                    amp = (12 * pi * d + 48 * y * pi ** 2 * d ** 2 + 48 * y2 * pi ** 3 * d ** 3) * boost
                    p = 3
                try:
                    bound = _poly_geom_tail(amp, p, r, n)
                except ConvergenceError:
                    continue
                if _tol_reached(bound, cfg):
                    if order == 0:
                        return total + Enclosure(0, bound.hi)  # all terms positive
                    b = bound.hi
                    return total + Enclosure(-b, b)
        raise ConvergenceError(
            f"lambert series (order {order}) did not converge within {cfg.max_terms} terms"
        )


def f_lambert(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f(y) = y^2 theta4'(y)/theta4(y) via its positive Lambert-type series."""
    return _lambert_sum(y, 0, cfg)


def f_prime_lambert(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f'(y) by termwise differentiation of the Lambert-type series."""
    return _lambert_sum(y, 1, cfg)


def f_second_lambert(y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f''(y) in the recombined termwise form (cubic denominators carry e^x + 1)."""
    return _lambert_sum(y, 2, cfg)
