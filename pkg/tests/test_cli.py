import json

import pytest

from wittcalc import cli
from wittcalc.fields import rationals
from wittcalc.weyl import BN, torsor_to_json, wreath
from wittcalc.sampling import trivial_torsor
from wittcalc.witt import diagonal, form_from_json, from_diagonal, witt_eq, witt_from_json

Q = rationals()


def run_json(capsys, argv, payload=None, tmp_path=None):
    args = list(argv)
    if payload is not None:
        f = tmp_path / "in.json"
        f.write_text(json.dumps(payload))
        args += ["--input", str(f)]
    code = cli.run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_form_lambda(capsys, tmp_path):
    payload = {"form": [2, 3, 5]}
    code, out, _ = run_json(
        capsys, ["form", "lambda", "--degree", "2"], payload, tmp_path
    )
    assert code == 0
    got = witt_from_json(json.loads(out)["witt"], Q)
    assert witt_eq(got, from_diagonal(diagonal(Q, [6, 10, 15])))


def test_form_eq(capsys, tmp_path):
    payload = {
        "a": [{"class": 2, "coeff": 2}],
        "b": [{"class": 1, "coeff": 2}],
    }
    code, out, _ = run_json(capsys, ["form", "eq"], payload, tmp_path)
    assert code == 0
    assert json.loads(out) == {"equal": True}


def test_coh_sw(capsys, tmp_path):
    payload = {"form": [2, 3], "d": 2}
    code, out, _ = run_json(capsys, ["coh", "sw"], payload, tmp_path)
    assert code == 0
    coh = json.loads(out)["coh"]
    assert coh["degree"] == 2
    assert coh["symbols"] == [[2, 3]]


def test_etale_trace_form(capsys, tmp_path):
    payload = {
        "algebra": [{"type": "poly", "coeffs": [-5, 0, 1]}]
    }
    code, out, _ = run_json(capsys, ["etale", "trace-form"], payload, tmp_path)
    assert code == 0
    form = form_from_json(json.loads(out)["form"], Q)
    assert [e.data for e in form.entries] == [2, 10]


def test_weyl_eval_u_trivial(capsys, tmp_path):
    payload = {"torsor": torsor_to_json(trivial_torsor(Q, BN, 2))}
    code, out, _ = run_json(
        capsys, ["weyl", "eval", "--invariant", "u", "--degree", "1"], payload, tmp_path
    )
    assert code == 0
    assert json.loads(out)["coh"]["symbols"] == []


def test_verify_suite(capsys):
    code, out, _ = run_json(capsys, ["verify", "--suite", "trace-oracle"])
    assert code == 0
    rep = json.loads(out)["reports"]
    assert rep[0]["passed"] and rep[0]["cases"] > 0


def test_malformed_input(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code = cli.run(["form", "eq", "--input", str(f)])
    out = capsys.readouterr()
    assert code == 2
    err = json.loads(out.err)
    assert "error" in err and "message" in err


def test_missing_key_is_input_error(capsys, tmp_path):
    code, _, err = run_json(capsys, ["form", "lambda", "-d", "1"], {}, tmp_path)
    assert code == 2
    assert json.loads(err)["error"] == "KeyError"


def test_bad_argument_exit_code(capsys):
    assert cli.run(["form", "no-such-op"]) == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys, tmp_path):
    payload = {"form": [30, -7], "d": 1}
    runs = []
    for _ in range(2):
        code, out, _ = run_json(capsys, ["coh", "sw"], payload, tmp_path)
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    json.loads(runs[0])  # emitted text is valid JSON


def test_json_indent_flag(capsys, tmp_path):
    payload = {
        "a": [{"class": 1, "coeff": 1}],
        "b": [{"class": 1, "coeff": 1}],
    }
    code, out, _ = run_json(
        capsys, ["--json-indent", "2", "form", "eq"], payload, tmp_path
    )
    assert code == 0
    assert out.startswith("{\n")
