"""Convexity scanning for the exponent family f_a(y) = y^a theta4'(y)/theta4(y).

Since f_a = y^(a-2) f with f the a = 2 member, two product-rule steps give

    f_a''(y) = y^(a-4) [ (a-2)(a-3) f(y) + 2 (a-2) y f'(y) + y^2 f''(y) ]

with f, f', f'' evaluated by the certified routes.  At a = 2 the bracket
collapses to y^2 f''(y), so the family evaluator specializes exactly to the
proven-convex member.

The search is one-sided by design: a returned :class:`Witness` carries a
strictly negative enclosure of f_a'' and rigorously disproves convexity at
that exponent, while an empty result proves nothing (the scan is a finite
grid plus refinement, not a covering).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certify import Witness
from .enclosure import DEFAULT_CONFIG, Enclosure, EvalConfig, as_enclosure
from .envelopes import log_grid
from .verifier import f_eval, f_prime, f_second

__all__ = ["ExponentQuery", "f_a_value", "f_a_prime", "f_a_second", "scan_rows", "find_nonconvex_witness"]


def _as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, str):
        return Fraction(a)
    if isinstance(a, float):
        return Fraction(a)
    raise TypeError(f"exponent must be rational-like, got {type(a).__name__}")


@dataclass(frozen=True)
class ExponentQuery:
    """A scan request: exponent, search interval, initial grid resolution."""

    a: Fraction
    interval: tuple[float, float] = (0.05, 5.0)
    resolution: int = 48

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        lo, hi = self.interval
        if not (0 < lo < hi):
            raise ValueError("scan interval must satisfy 0 < lo < hi")
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")


def f_a_value(a, y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f_a(y) = y^(a-2) f(y)."""
    a = _as_fraction(a)
    with cfg.scope():
        y = as_enclosure(y)
        return y ** (a - 2) * f_eval(y, cfg)


def f_a_prime(a, y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """f_a'(y) = (a-2) y^(a-3) f(y) + y^(a-2) f'(y)."""
    a = _as_fraction(a)
    with cfg.scope():
        y = as_enclosure(y)
        return Enclosure(a - 2) * y ** (a - 3) * f_eval(y, cfg) + y ** (a - 2) * f_prime(y, cfg)


def f_a_second(a, y, cfg: EvalConfig = DEFAULT_CONFIG) -> Enclosure:
    """Second derivative of the exponent-a family member."""
    a = _as_fraction(a)
    with cfg.scope():
        y = as_enclosure(y)
        bracket = (
            Enclosure((a - 2) * (a - 3)) * f_eval(y, cfg)
            + Enclosure(2 * (a - 2)) * y * f_prime(y, cfg)
            + y * y * f_second(y, cfg)
        )
        return y ** (a - 4) * bracket


def scan_rows(query: ExponentQuery, cfg: EvalConfig = DEFAULT_CONFIG):
    """(y, f_a''(y)) at the query's log-spaced grid points, y ascending."""
    lo, hi = query.interval
    return [(y, f_a_second(query.a, y, cfg)) for y in log_grid(lo, hi, query.resolution)]


def find_nonconvex_witness(
    query: ExponentQuery, cfg: EvalConfig = DEFAULT_CONFIG, refinements: int = 40
) -> Witness | None:
    """Search for a point where f_a'' is certifiably negative.

    Grid scan first; if the most negative enclosure is not already strict,
    golden-section-style shrinking around the running minimum for up to
    `refinements` extra evaluations.  Soundness is asymmetric: Some(witness)
    is a proof, None is just a failed search.
    """
    rows = scan_rows(query, cfg)
    best_idx = min(range(len(rows)), key=lambda i: rows[i][1].mid)
    best_y, best_val = rows[best_idx]
    if best_val.is_strictly_negative():
        return Witness(y=best_y, value=best_val, context=f"f_a'' at a={query.a}")

    # refine inside the bracket around the grid minimum
    ratio = 0.381966  # 2 - golden ratio
    lo = rows[max(best_idx - 1, 0)][0].lo
    hi = rows[min(best_idx + 1, len(rows) - 1)][0].hi
    with cfg.scope():
        for _ in range(refinements):
            span = hi - lo
            for t in (ratio, 1 - ratio):
                y = Enclosure(lo + span * t)
                val = f_a_second(query.a, y, cfg)
                if val.is_strictly_negative():
                    return Witness(y=y, value=val, context=f"f_a'' at a={query.a}")
                if val.mid < best_val.mid:
                    best_y, best_val = y, val
            mid = best_y.mid
            quarter = span / 4
            lo, hi = mid - quarter, mid + quarter
    return None
