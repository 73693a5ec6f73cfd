import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mipaug.cli import run_cli

HERE = Path(__file__).resolve().parent.parent / "instances"


def fx(name):
    return str(HERE / name)


def run(capsys, *argv):
    code = run_cli(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(["--version"])
    assert exc.value.code == 0
    assert "mipaug 0.1.0 (instance format 1)" in capsys.readouterr().out


@pytest.mark.parametrize("verb", ["circuits", "bases", "gstar", "gab", "tstar", "solve",
                                  "oracle", "check-dts", "finite-testset", "check-bound"])
def test_every_verb_json_shape(capsys, verb):
    code, out, _ = run(capsys, verb, fx("lone.mip"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"verb", "instance", "result", "provenance"}
    assert doc["verb"] == verb and doc["instance"]["nR"] == 2


def test_tstar_text(capsys):
    code, out, _ = run(capsys, "tstar", fx("raymond.mip"))
    assert code == 0
    lines = out.splitlines()
    assert "(-1, 0, 1) basis (0) gen (1)" in lines
    assert "(0, -1, 1) basis (1) gen (1)" in lines
    assert len(lines) == 4


def test_gstar_unpointed(capsys):
    code, out, _ = run(capsys, "gstar", fx("unpointed.mip"))
    assert code == 0
    assert set(out.splitlines()) == {"(1, 0)", "(-1, 0)", "(0, 1)", "(0, -1)", "(1, -1)", "(-1, 1)"}


def test_solve_trace(capsys):
    code, out, _ = run(capsys, "solve", fx("lone.mip"), "--start", "0 1 2", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("step 1: obj 2 move (1, -1, -1)")
    assert lines[-3:] == ["status optimal", "value 2", "point (1, 0, 1)"]


@pytest.mark.parametrize("testset", ["tstar", "gab", "finite"])
def test_solve_with_each_testset(capsys, testset):
    code, out, _ = run(capsys, "solve", fx("raymond.mip"), "--testset", testset, "--start", "0 0 3")
    assert code == 0 and "value -6" in out


def test_solve_cost_override(capsys):
    code, out, _ = run(capsys, "solve", fx("raymond.mip"), "--cost", "1 1 1", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["value"] == "3"


def test_check_bound_and_dts_text(capsys):
    code, out, _ = run(capsys, "check-bound", fx("raymond.mip"))
    assert code == 0 and out.startswith("Delta(A) 1 ") and out.rstrip().endswith("violations 0")
    code, out, _ = run(capsys, "check-dts", fx("raymond.mip"))
    assert code == 0 and out.rstrip().endswith("0 failures")


def test_hilbert_verbs(capsys):
    code, out, _ = run(capsys, "hilbert", fx("halfplane.cone"), "--graver", "--verify")
    assert code == 0
    assert set(out.splitlines()) == {"(-1, 0)", "(-1, 1)", "(0, -1)", "(1, -1)"}
    code, _, err = run(capsys, "hilbert", fx("halfplane.cone"))
    assert code == 65 and "pointed" in err


@pytest.mark.parametrize("argv, expected", [
    (["check-dts", "raymond.mip", "--directions", "empty.dirs"], 1),
    (["solve", "infeasible.mip"], 2),
    (["solve", "unbounded.mip"], 3),
    (["gstar", "big.mip"], 64),
    (["frobnicate", "lone.mip"], 64),
    (["tstar", "missing.mip"], 64),
    (["tstar", "malformed.mip"], 65),
])
def test_exit_codes(capsys, argv, expected):
    argv = [argv[0]] + [fx(a) if a.endswith((".mip", ".dirs")) else a for a in argv[1:]]
    code, _, _ = run(capsys, *argv)
    assert code == expected


@pytest.mark.parametrize("verb", ["gab", "oracle", "finite-testset", "check-dts"])
def test_missing_box_is_usage_error(capsys, tmp_path, verb):
    p = tmp_path / "nobox.mip"
    p.write_text("dims 2 1 1\nrow 1 1 1\nrhs 3\ncost 1 1 1\n")
    code, _, err = run(capsys, verb, str(p))
    assert code == 64 and "box" in err


def test_parse_error_reports_line(capsys):
    code, _, err = run(capsys, "tstar", fx("malformed.mip"))
    assert code == 65 and "line" in err


def test_unbounded_json_status(capsys):
    code, out, _ = run(capsys, "solve", fx("unbounded.mip"), "--format", "json")
    assert code == 3 and json.loads(out)["result"] == {"status": "unbounded"}


def test_stdin_and_subprocess_determinism():
    text = Path(fx("kw.mip")).read_text()
    env = dict(os.environ)
    outs = []
    for seed in ("0", "1"):
        env["PYTHONHASHSEED"] = seed
        proc = subprocess.run([sys.executable, "-m", "mipaug", "tstar", "-", "--format", "json"],
                              input=text, capture_output=True, text=True, env=env, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["verb"] == "tstar"
