import json

from laurentcc.parsing import parse_ring, parse_series
from laurentcc.report import FAIL, PASS, SKIP, VerificationReport, render_value


def test_render_value():
    R = parse_ring("Q[e;2]")
    assert render_value(1 + R.gen("e") * 4) == "1 + 4*e"
    assert render_value(parse_series("t + t^2", R)) == str(parse_series("t + t^2", R))
    assert render_value([R.one, (2, "x")]) == ["1", [2, "x"]]
    assert render_value({1: R.zero}) == {"1": "0"}
    assert render_value(None) is None


def test_modular_values_render_nonnegative():
    R = parse_ring("Z/4")
    assert render_value(-R.one) == "3"


def test_status_and_json():
    rep = VerificationReport("laurentcc cc t t", "Q", 32)
    assert rep.add("a", True, value=3) == PASS
    assert rep.ok
    rep.add("skipped", SKIP)
    assert rep.ok
    rep.add("b", False)
    assert rep.status == FAIL
    data = json.loads(rep.to_json())
    assert data["command"] == "laurentcc cc t t"
    assert data["ring"] == "Q"
    assert data["precision"] == 32
    assert data["seed"] is None
    assert data["status"] == "fail"
    assert [c["status"] for c in data["checks"]] == ["pass", "skip", "fail"]
    assert data["checks"][0]["witnesses"] == {"value": 3}


def test_text_rendering():
    rep = VerificationReport("cmd", "Z/4", 8, seed=5)
    rep.add("check", True, value=parse_ring("Z/4")(3))
    text = rep.to_text()
    assert "seed: 5" in text
    assert "[pass] check" in text
    assert "value = 3" in text
    assert text.endswith("status: pass")
