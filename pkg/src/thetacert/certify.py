"""Adaptive-subdivision sign certification.

``certify_sign(fn, [a, b], sign)`` proves that a quantity keeps a strict
sign on an interval: it evaluates the quantity's enclosure on a box,
accepts the box if the enclosure is strictly signed, bisects otherwise,
and stops at a configurable depth (with one precision-escalation retry)
before giving up.  The outcome is a :class:`CertificationReport` whose
``certified`` status constitutes a rigorous proof of the sign claim on
the whole interval; a ``failed`` status carries a :class:`Witness` box on
which the *opposite* strict sign was established, and ``inconclusive``
records the deepest undecided box without asserting anything.

Reports are deterministic functions of the evaluated box set: the
traversal order is fixed, and accepted boxes contribute only their count
and the worst certified margin.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from mpmath import libmp as _lm

from .enclosure import (
    DEFAULT_CONFIG,
    ConvergenceError,
    Enclosure,
    EvalConfig,
    as_enclosure,
)

__all__ = [
    "Status",
    "Check",
    "Witness",
    "CertificationReport",
    "certify_sign",
]


class Status(enum.Enum):
    CERTIFIED = "certified"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    """A point (or box) together with a strictly signed enclosure.

    A witness with value.hi < 0 rigorously disproves nonnegativity at y,
    and symmetrically for the other sign.
    """

    y: Enclosure
    value: Enclosure
    context: str = ""

    def __post_init__(self):
        if not (self.value.is_strictly_positive() or self.value.is_strictly_negative()):
            raise ValueError("a witness requires a strictly signed value enclosure")


@dataclass(frozen=True)
class Check:
    """One named sub-condition of a verification chain.

    passed is True/False when decided, None when the enclosures were too
    wide to decide either way.
    """

    name: str
    passed: bool | None
    detail: str = ""


@dataclass
class CertificationReport:
    name: str
    status: Status
    interval: tuple | None = None
    boxes_examined: int = 0
    max_depth_reached: int = 0
    min_margin: Enclosure | None = None
    witness: Witness | None = None
    unresolved_box: Enclosure | None = None
    checks: list[Check] = field(default_factory=list)
    subreports: list["CertificationReport"] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    @property
    def report_id(self) -> str:
        if self.interval is not None:
            return f"{self.name}@[{self.interval[0]},{self.interval[1]}]"
        return self.name

    def summary(self) -> str:
        parts = [f"{self.report_id}: {self.status.value}"]
        if self.boxes_examined:
            parts.append(f"boxes={self.boxes_examined}")
            parts.append(f"depth={self.max_depth_reached}")
        if self.min_margin is not None:
            parts.append(f"margin={_lm.to_str(self.min_margin._lo, 8)}")
        if self.witness is not None:
            parts.append(f"witness at {self.witness.y!r}")
        failed = [c.name for c in self.checks if c.passed is False]
        if failed:
            parts.append("failed checks: " + ", ".join(failed))
        return "  ".join(parts)


def _parse_sign(target_sign) -> int:
    if target_sign in (+1, -1):
        return target_sign
    if isinstance(target_sign, str):
        s = target_sign.lower()
        if s in ("positive", "+", "pos"):
            return 1
        if s in ("negative", "-", "neg"):
            return -1
    raise ValueError(f"target sign must be +1/-1 or 'positive'/'negative', got {target_sign!r}")


def _strict(v: Enclosure, sign: int) -> bool:
    return v.is_strictly_positive() if sign > 0 else v.is_strictly_negative()


def _margin(v: Enclosure, sign: int):
    return v.lo if sign > 0 else -v.hi


def certify_sign(
    fn,
    interval,
    target_sign,
    cfg: EvalConfig = DEFAULT_CONFIG,
    max_depth: int = 60,
    max_boxes: int = 50_000,
    escalate: bool = True,
    name: str = "certify-sign",
) -> CertificationReport:
    """Prove fn(y) has the strict target sign for every y in [a, b].

    fn(box, cfg) must return an enclosure of the quantity over the box.
    The interval endpoints are enclosed outward, so certification covers
    at least the requested set.  Evaluation failures (e.g. a tail bound
    not converging on a wide box) count as undecided and trigger a split.

    Work is bounded two ways: boxes are never split beyond `max_depth`
    (with one precision-escalation retry there), and at most `max_boxes`
    boxes are examined in total.  Quantities whose certifiable box width
    shrinks exponentially along the interval (e.g. values with a decaying
    exponential factor that interval arithmetic cannot divide out) exhaust
    the budget and come back `inconclusive` instead of running forever;
    every verification suite in this package stays orders of magnitude
    below the default budget.
    """
    sign = _parse_sign(target_sign)
    with cfg.scope():
        lo_enc = as_enclosure(interval[0])
        hi_enc = as_enclosure(interval[1])
        a, b = lo_enc._lo, hi_enc._hi
        if _lm.mpf_cmp(a, b) >= 0:
            raise ValueError("empty certification interval")
    mid_prec = cfg.precision_bits + 16

    stack = [(a, b, 0)]
    boxes = 0
    deepest = 0
    worst = None  # mpf margin, smallest certified distance from zero

    report = CertificationReport(
        name=name,
        status=Status.CERTIFIED,
        interval=(Enclosure._from_mpi((a, a)).lo, Enclosure._from_mpi((b, b)).hi),
    )

    while stack:
        xa, xb, depth = stack.pop()
        box = Enclosure._from_mpi((xa, xb))
        boxes += 1
        deepest = max(deepest, depth)
        if boxes > max_boxes:
            report.status = Status.INCONCLUSIVE
            report.unresolved_box = box
            break
        value = None
        try:
            value = fn(box, cfg)
        except ConvergenceError:
            pass
        if value is not None:
            if _strict(value, sign):
                m = _margin(value, sign)
                if worst is None or m < worst:
                    worst = m
                continue
            if _strict(value, -sign):
                # Opposite sign holds on the entire box: rigorous disproof.
                report.status = Status.FAILED
                report.witness = Witness(y=box, value=value, context=name)
                break
        if depth >= max_depth:
            if escalate:
                try:
                    value = fn(box, cfg.escalated())
                except ConvergenceError:
                    value = None
                if value is not None and _strict(value, sign):
                    m = _margin(value, sign)
                    if worst is None or m < worst:
                        worst = m
                    continue
                if value is not None and _strict(value, -sign):
                    report.status = Status.FAILED
                    report.witness = Witness(y=box, value=value, context=name)
                    break
            report.status = Status.INCONCLUSIVE
            report.unresolved_box = box
            break
        mid = _lm.mpf_shift(_lm.mpf_add(xa, xb, mid_prec, "n"), -1)
        stack.append((mid, xb, depth + 1))
        stack.append((xa, mid, depth + 1))

    report.boxes_examined = boxes
    report.max_depth_reached = deepest
    if worst is not None and report.status is Status.CERTIFIED:
        report.min_margin = Enclosure(worst)
    return report
