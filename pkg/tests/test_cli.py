import json

import pytest

from cdgakit.cli import run

GM_ARGS = ["gmassey", "--preset", "M", "--action", "rho", "--invariant", "-a", "b1^b2",
           "-x", "2 a1^c2 - a2^c1 + a1^c1 + a2^c2", "-x", "c1^c2", "-x", "a1^c1 + a2^c1 + a2^c2"]


def _json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_betti_m(capsys):
    code, rep = _json(capsys, ["betti", "--preset", "M"])
    assert code == 0
    assert rep["result"] == [1, 6, 17, 30, 36, 30, 17, 6, 1]
    assert set(rep) == {"subcommand", "input", "result", "checks"}


def test_gmassey_command(capsys):
    code, rep = _json(capsys, GM_ARGS)
    assert code == 0
    assert rep["result"]["verdict"] == "nontrivial-certified"
    assert rep["result"]["value_top"] == "-4/3"


def test_json_is_byte_stable(capsys):
    run(GM_ARGS)
    first = capsys.readouterr().out
    run(GM_ARGS)
    assert capsys.readouterr().out == first


def test_non_invariant_expression_rejected(capsys):
    code = run(["gmassey", "--preset", "M", "--invariant", "-a", "a1", "-x", "b1", "-x", "b1", "-x", "b1"])
    assert code == 2
    assert "not invariant" in capsys.readouterr().err


def test_parse_error_location(tmp_path, capsys):
    f = tmp_path / "bad.cdga"
    f.write_text("algebra X\ngenerator b1 1\ngenerator e1 1\nd e1 = q1^b1\n")
    assert run(["betti", "--file", str(f)]) == 2
    err = capsys.readouterr().err
    assert "line 4, column 8" in err and "q1" in err


def test_file_input(tmp_path, capsys):
    f = tmp_path / "h.cdga"
    f.write_text("algebra H\ngenerator x 1\ngenerator y 1\ngenerator z 1\nd z = x^y\n")
    code, rep = _json(capsys, ["massey3", "--file", str(f), "-x", "x", "-x", "x", "-x", "y"])
    assert code == 0
    assert rep["result"]["verdict"] == "nontrivial-certified"
    assert rep["input"] == f"file:{f}"


def test_missing_input(capsys):
    assert run(["betti"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as e:
        run(["frobnicate"])
    assert e.value.code == 2


@pytest.mark.parametrize("sub", ["betti", "gmassey", "verify", "bundle", "lefschetz", "massey4-certify"])
def test_help_lists_flags(sub, capsys):
    with pytest.raises(SystemExit) as e:
        run([sub, "--help"])
    assert e.value.code == 0
    assert "--format" in capsys.readouterr().out


def test_text_format_and_output_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert run(["bundle", "--ring", "eisenstein", "--format", "text", "--output", str(out)]) == 0
    text = out.read_text()
    assert "invariant: 3" in text


def test_small_commands(capsys):
    _, rep = _json(capsys, ["fixed-points", "--basis", "1 3 1 0"])
    assert rep["result"]["fixed_points"] == 3
    _, rep = _json(capsys, ["euler-quotient", "--preset", "M", "--fixed", "81"])
    assert rep["result"]["chi_quotient"] == "54"
    _, rep = _json(capsys, ["invariants", "--preset", "M"])
    assert rep["result"]["dimensions"] == [1, 0, 16, 8, 36, 8, 16, 0, 1]
    _, rep = _json(capsys, ["cohomology", "--preset", "N", "--degree", "1"])
    assert rep["result"]["basis"] == ["b1", "b2", "c1", "c2"]
    _, rep = _json(capsys, ["symplectic-check", "--preset", "M", "--omega", "omega"])
    assert all(c["pass"] for c in rep["checks"])
    _, rep = _json(capsys, ["coordinate-verify"])
    assert all(c["pass"] for c in rep["checks"])
    _, rep = _json(capsys, ["check", "--preset", "M"])
    assert all(c["pass"] for c in rep["checks"])


def test_certificate_commands(capsys):
    _, rep = _json(capsys, ["massey4-certify", "--preset", "M", "--invariant", "-x", "tau2", "-x", "theta",
                            "-x", "theta", "-x", "tau3", "--sigma", "sigma"])
    assert rep["result"]["sigma_cup_psi_top"] == "-1/3"
    _, rep = _json(capsys, ["lemma25", "--preset", "M", "--invariant", "-a", "theta",
                            "-x", "tau1", "-x", "tau2", "-x", "tau3"])
    assert rep["result"]["pass"] is True
    _, rep = _json(capsys, ["lefschetz", "--preset", "M", "--invariant", "--omega", "omega",
                            "--degree", "2", "--power", "2"])
    assert "b1^b2" in rep["result"]["kernel"]


def test_verify_suite(capsys):
    code = run(["verify", "--suite", "paper", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("[PASS]") == 13
