from __future__ import annotations

import json

import pytest

from herglotz.cli import run

MINUS_INV_Z = {"num": [-1], "den": [0, 1]}
MINUS_TWO_INV_Z = {"num": [-2], "den": [0, 1]}
Z = [0, 1]


def write(tmp_path, name, data) -> str:
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run_json(capsys, *argv):
    code = run([*argv, "--output", "json"])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_bad_matrix_names_the_failing_minor(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"n": 2, "entries": [[MINUS_INV_Z, MINUS_TWO_INV_Z], [MINUS_TWO_INV_Z, MINUS_INV_Z]]})
    code, cert, _ = run_json(capsys, "check", "matrix", path, "--criterion", "all")
    assert code == 1 and cert["outcome"] == "reject"
    failing = [c for c in cert["checks"] if c["result"] == "fail" and c["condition"] == "pole_sign"]
    assert failing[0]["index_set"] == [1, 2]
    assert failing[0]["witness"]["value"] == "-3"


def test_good_matrix_accepts_under_every_criterion(tmp_path, capsys):
    path = write(tmp_path, "good.json", {"n": 2, "entries": [[MINUS_INV_Z, 0], [0, Z]]})
    for crit in ("ii", "iii", "all"):
        code, cert, _ = run_json(capsys, "check", "matrix", path, "--criterion", crit)
        assert code == 0 and cert["outcome"] == "accept"
    code, cert, _ = run_json(capsys, "check", "matrix", path)
    assert any(c["condition"] == "agreement" and c["result"] == "pass" for c in cert["checks"])


def test_colour_splits_into_two_parts(tmp_path, capsys):
    path = write(tmp_path, "div.json", [{"point": "0", "value": 2}, {"point": "1", "value": -1}])
    code, cert, _ = run_json(capsys, "colour", path)
    assert code == 0
    assert len([c for c in cert["checks"] if c["condition"] == "part"]) == 2


def test_malformed_inputs_exit_3(tmp_path, capsys):
    assert run(["check", "matrix", write(tmp_path, "m.json", "{not json")]) == 3
    assert run(["check", "matrix", write(tmp_path, "m2.json", {"n": 2, "entries": [[1]]})]) == 3
    assert run(["check", "matrix", str(tmp_path / "missing.json")]) == 3
    assert run(["check", "hb", write(tmp_path, "h.json", {"A": [1]})]) == 3
    assert run(["check", "nothing"]) == 3
    out = capsys.readouterr()
    assert "malformed" in out.err


def test_hypothesis_violation_exits_4(tmp_path, capsys):
    path = write(tmp_path, "nonsimple.json", {"n": 1, "entries": [[{"num": [1], "den": [0, 0, 1]}]]})
    assert run(["factor", "det", path]) == 4
    out = capsys.readouterr()
    assert out.out == "" and "error" in out.err


def test_scalar_and_synth_commands(tmp_path, capsys):
    code, cert, _ = run_json(capsys, "check", "scalar", write(tmp_path, "f.json", MINUS_INV_Z))
    assert code == 0 and cert["checks"][-1]["condition"] == "representation"
    code, cert, _ = run_json(capsys, "check", "scalar", write(tmp_path, "g.json", {"num": [1], "den": [0, 1]}))
    assert code == 1
    data = {"zeros": ["1"], "poles": ["0"], "scale": "1"}
    code, cert, _ = run_json(capsys, "synth", "scalar", write(tmp_path, "s.json", data))
    assert code == 0 and "function" in cert["checks"][0]["witness"]


def test_hb_and_debranges_commands(tmp_path, capsys):
    stable = write(tmp_path, "ab.json", {"A": [-2, 0, 1], "B": [0, 3]})
    assert run(["check", "hb", stable]) == 0
    unstable = write(tmp_path, "ab2.json", {"A": [-2, 0, 1], "B": [0, -3]})
    assert run(["check", "hb", unstable]) == 1
    zi = {"re": "0", "im": "1"}
    plus = {"n": 2, "entries": [[[zi, 1], 0], [0, [zi, 1]]]}
    minus = {"n": 2, "entries": [[[{"re": "0", "im": "-1"}, 1], 0], [0, [{"re": "0", "im": "-1"}, 1]]]}
    assert run(["check", "debranges", write(tmp_path, "db.json", {"E_minus": minus, "E_plus": plus})]) == 0
    assert run(["check", "debranges", write(tmp_path, "db2.json", {"E_minus": plus, "E_plus": minus})]) == 1
    assert run(["check", "hb", write(tmp_path, "e.json", {"E": plus})]) == 0
    capsys.readouterr()


def test_factor_det_and_winding(tmp_path, capsys):
    path = write(tmp_path, "q.json", {"n": 2, "entries": [[MINUS_INV_Z, 0], [0, Z]]})
    code, cert, _ = run_json(capsys, "factor", "det", path)
    assert code == 0 and cert["checks"][-1]["condition"] == "product_equals_det"
    f = write(tmp_path, "w.json", {"num": [-2, 0, 1], "den": [0, 0, 0, 1]})
    code, cert, _ = run_json(capsys, "oracle", "winding", f, "--interval=-3,3", "--steps", "2048")
    assert code == 0 and cert["checks"][0]["witness"]["exact"] == -1
    assert abs(float(cert["checks"][0]["witness"]["numeric"]) + 1) < 0.1


def test_json_output_is_byte_deterministic(tmp_path, capsys):
    path = write(tmp_path, "good.json", {"n": 2, "entries": [[MINUS_INV_Z, 1], [1, Z]]})
    outputs = []
    for _ in range(2):
        run(["check", "matrix", path, "--output", "json", "--seed", "5"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] and outputs[0]


@pytest.mark.parametrize("flag", ["--max-refine", "--samples"])
def test_nonpositive_options_are_rejected(tmp_path, capsys, flag):
    path = write(tmp_path, "good.json", {"n": 1, "entries": [[Z]]})
    assert run(["check", "matrix", path, flag, "0"]) == 3
    capsys.readouterr()


def test_text_output(tmp_path, capsys):
    path = write(tmp_path, "good.json", {"n": 1, "entries": [[Z]]})
    assert run(["check", "matrix", path]) == 0
    assert "accept" in capsys.readouterr().out
