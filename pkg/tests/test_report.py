"""Report serialization: outward decimal bounds and JSON round-trips."""

import json

from thetacert import CertificationReport, Enclosure, EvalConfig, Status, Witness, precision
from thetacert.report import (
    ReportDocument,
    certification_record,
    decimal_bounds,
    enclosure_from_decimal,
)


def test_decimal_bounds_are_outward():
    with precision(128):
        for value in ("0.1", "-0.09", "3.14159", "1e-40", "-2.5e17"):
            e = Enclosure(value)
            lo, hi = decimal_bounds(e, 25)
            with precision(300):
                # ceiling of the printed lo must not exceed the true lo, and
                # floor of the printed hi must not fall below the true hi
                assert Enclosure(lo).hi <= e.lo
                assert Enclosure(hi).lo >= e.hi


def test_decimal_bounds_round_trip_contains():
    with precision(128):
        e = Enclosure(1) / Enclosure(3)
        lo, hi = decimal_bounds(e, 30)
        rebuilt = enclosure_from_decimal(lo, hi)
        assert rebuilt.contains(e)


def test_zero_prints_as_zero():
    with precision(128):
        lo, hi = decimal_bounds(Enclosure(0), 10)
        assert lo == "0" and hi == "0"


def test_document_round_trip_preserves_strings():
    doc = ReportDocument(command="verify demo", config=EvalConfig()).start()
    with precision(128):
        doc.add_value("third", Enclosure(1) / Enclosure(3))
        doc.add_certification(
            CertificationReport(
                name="demo",
                status=Status.CERTIFIED,
                interval=(Enclosure(1).lo, Enclosure(2).hi),
                boxes_examined=3,
                min_margin=Enclosure("0.25"),
            )
        )
    doc.finish()
    text = doc.to_json()
    parsed = ReportDocument.from_json(text)
    assert parsed.to_json() == text
    data = json.loads(text)
    assert data["schema_version"] == "1"
    assert data["summary"]["ok"] is True


def test_witness_and_failure_records():
    with precision(128):
        w = Witness(y=Enclosure("0.05"), value=Enclosure("-21.8", "-21.7"), context="demo")
        rep = CertificationReport(name="fails", status=Status.FAILED, witness=w)
        rec = certification_record(rep)
    assert rec["status"] == "failed"
    assert rec["witness"]["context"] == "demo"
    lo, hi = rec["witness"]["value"]
    assert float(lo) <= -21.8 and float(hi) >= -21.7


def test_summary_counts():
    doc = ReportDocument(command="verify x")
    with precision(128):
        doc.add_certification(CertificationReport(name="a", status=Status.CERTIFIED))
        doc.add_certification(CertificationReport(name="b", status=Status.INCONCLUSIVE))
    s = doc.summary
    assert s == {"certified": 1, "failed": 0, "inconclusive": 1, "ok": False}
