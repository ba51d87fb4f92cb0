import json

import pytest

from laurentcc import cli
from laurentcc.errors import ConsistencyError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def witness(data, name, key="value"):
    return next(c for c in data["checks"] if c["name"] == name)["witnesses"][key]


def test_cc_of_t_with_itself(capsys):
    code, data = run_json(capsys, "cc", "--ring", "Q", "t", "t")
    assert code == 0
    assert witness(data, "cc") == "-1"
    assert witness(data, "cc stable at 2N", "at_2N") == "-1"
    assert data["status"] == "pass"
    assert data["ring"] == "Q"
    assert data["precision"] == 32
    assert data["seed"] is None


def test_worked_example_through_the_cli(capsys):
    args = ["--ring", "Q[e;2]", "t + e*t^-1", "t + t^2"]
    assert witness(run_json(capsys, "bott", *args)[1], "bott") == "1 + 4*e"
    code, data = run_json(capsys, "det", "--ring", "Q[e;2]", "t + t^2", "t + e*t^-1")
    assert code == 0
    assert witness(data, "det") == "1 - e"
    assert witness(data, "det stable at 2M", "at_2M") == "1 - e"


def test_text_output(capsys):
    code, out, _ = run(capsys, "lie-bott", "t^3", "t^-1")
    assert code == 0
    assert "[pass] lie-bott" in out
    assert "value = 12" in out
    code, out, _ = run(capsys, "lie-det", "t^3", "t^-1")
    assert "value = 1" in out


def test_virasoro_table(capsys):
    code, data = run_json(capsys, "virasoro", "--which", "det", "--max", "3")
    assert code == 0
    assert witness(data, "(3,-3)") == "4"


def test_decompose_and_invert(capsys):
    for variant in ("plus1*minus0", "minus*plus"):
        code, data = run_json(capsys, "decompose", "--ring", "Q[e;2]", "-N", "12",
                              "--variant", variant, "e + t + e*t^-1 + t^2")
        assert code == 0, data
    code, data = run_json(capsys, "invert", "--ring", "Z/4", "-N", "10", "2 + t + 2*t^-1")
    assert code == 0, data


def test_defect_and_cech(capsys):
    code, _ = run_json(capsys, "defect", "--ring", "Q[e;2]", "--cocycle", "det", "-N", "12",
                       "t + e*t^-1", "t + t^2", "t + e")
    assert code == 0
    code, data = run_json(capsys, "cech", "--ring", "Q[e;2]", "--no-stability",
                          "t + e*t^-1", "t + t^2", "t")
    assert code == 0
    assert witness(data, "Cech identity for bott", "quadruples") == 81


def test_probe_always_exits_zero_and_is_deterministic(capsys):
    code, first = run(capsys, "probe", "--trials", "3", "--seed", "4", "--json")[:2]
    assert code == 0
    _, second = run(capsys, "probe", "--trials", "3", "--seed", "4", "--json")[:2]
    assert first == second
    assert json.loads(first)["seed"] == 4


def test_parse_error_exits_2(capsys):
    code, out, err = run(capsys, "cc", "t +* 1", "t")
    assert code == 2
    assert "ParseError" in err


def test_wrong_argument_count_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cc", "t"])
    assert exc.value.code == 2


def test_unknown_verb_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_not_an_automorphism_exits_2(capsys):
    code, _, err = run(capsys, "bott", "t^2", "t")
    assert code == 2


def test_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "cocycle_defect", lambda *a: cli.make_ring("Q[e;2]")(2))
    code, data = run_json(capsys, "defect", "--ring", "Q[e;2]", "t", "t", "t")
    assert code == 1
    assert data["status"] == "fail"


def test_internal_inconsistency_exits_3(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise ConsistencyError("strategies disagree")

    monkeypatch.setattr(cli, "cc", boom)
    code, _, err = run(capsys, "cc", "t", "t")
    assert code == 3
    assert "ConsistencyError" in err


def test_same_input_same_report(capsys):
    first = run(capsys, "bott", "--ring", "Z/4", "t + 2*t^-1", "t + t^2", "--json")[1]
    second = run(capsys, "bott", "--ring", "Z/4", "t + 2*t^-1", "t + t^2", "--json")[1]
    assert first == second
