import json
import math

from utils.reports import (
    HistogramBin, IdentityCheck, Report, canonical_json, histogram_csv, jsonable,
)


def test_big_integers_become_decimal_strings():
    assert jsonable(2**70) == "1180591620717411303424"
    assert jsonable({"n": 5, "ok": True, "x": 0.5}) == {"n": "5", "ok": True, "x": 0.5}
    assert jsonable(complex(1.0, -2.0)) == {"re": 1.0, "im": -2.0}
    assert jsonable(math.inf) == "inf"


def test_canonical_json_round_trips():
    payload = {"b": [1, 2**64], "a": {"z": 1.25, "y": None}, "c": "텍스트"}
    text = canonical_json(payload)
    assert canonical_json(json.loads(text)) == text


def test_identity_check_kinds():
    assert IdentityCheck.exact("e", 3, 3).passed
    assert not IdentityCheck.exact("e", 3, 4).passed
    assert IdentityCheck.close("c", 1.0, 1.0 + 1e-12, 1e-9).passed
    assert IdentityCheck.at_most("m", 5, 5.0).passed
    assert not IdentityCheck.at_most("m", 6, 5.0).passed
    assert IdentityCheck.exact("e", 1, 1).to_dict()["pass"] is True


def test_histogram_csv_schema():
    text = histogram_csv([HistogramBin(0, 60, 1, 0.5), HistogramBin(60, 120, 1, 0.25)])
    lines = text.split("\n")
    assert lines[0] == "bin_start,bin_end,count,model"
    assert lines[1] == "0,60,1,0.5"
    assert "\r" not in text


def test_report_payload_excludes_timing():
    report = Report(command="psq search", inputs={"x": 5}, outputs={"n": 241}, timing_ms=12.5)
    assert "timing_ms" not in report.payload()
    parsed = json.loads(report.to_json())
    assert parsed["outputs"] == {"n": "241"}
    assert parsed["timing_ms"] == 12.5
    assert report.all_passed


def test_report_csv_fields():
    report = Report(command="charsum rf", inputs={}, outputs={"value": 0, "terms": 3})
    assert report.to_csv().split("\n")[:3] == ["field,value", "terms,3", "value,0"]
