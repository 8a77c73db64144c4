import json
import subprocess
import sys

import pytest

from randsts.cli import build_parser, main

FIG = ["--n", "9", "--sigma", "(1,2)(3,4,5)(6,7)(8,9)", "--tau", "(2,3)(5,6,8)(7,9)"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect_figure1(capsys):
    code, out, _ = run(capsys, "inspect", *FIG)
    assert code == 0
    assert "genus           3" in out
    assert "H(2.1.1)" in out and "2 marked points" in out
    assert "cylinders       3" in out
    assert "holonomy        V" in out


def test_inspect_json(capsys):
    code, out, _ = run(capsys, "inspect", *FIG, "--json")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 3 and data["stratum"] == "2.1.1"
    assert len(data["cylinders"]) == 3 and data["holonomy"] == "V"


def test_inspect_trivial(capsys):
    code, out, _ = run(capsys, "inspect", "--n", "1", "--sigma", "", "--tau", "", "--json")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 1 and data["holonomy"] == "H"


def test_inspect_parse_error(capsys):
    code, _, err = run(capsys, "inspect", "--n", "3", "--sigma", "(1,2)(2,3)", "--tau", "")
    assert code == 2
    assert "duplicate element 2" in err
    lines = err.splitlines()
    assert lines[-1].index("^") == lines[-2].index("(1,2)(2,3)") + 6


def test_exact_vertices(capsys):
    code, out, _ = run(capsys, "exact", "--n", "3", "--model", "hr", "--mu", "3", "--stat", "vertices")
    assert code == 0
    assert out.splitlines() == ["vertices,probability,approx", "1,1/2,≈0.5", "3,1/2,≈0.5"]


def test_exact_tv(capsys):
    code, out, _ = run(capsys, "exact", "--n", "3", "--model", "hr", "--mu", "3", "--stat", "tv")
    assert code == 0 and "tv,1/6,≈0.166667" in out


@pytest.mark.parametrize("stat", ["classdist", "bounds", "moments"])
@pytest.mark.parametrize("model", [["--model", "hr", "--mu", "6"], ["--model", "standard"]])
def test_exact_other_stats(capsys, stat, model):
    code, out, _ = run(capsys, "exact", "--n", "6", *model, "--stat", stat)
    assert code == 0
    rows = out.splitlines()
    assert len(rows) > 1 and all("≈" in r for r in rows[1:])


def test_exact_gate(capsys):
    code, _, err = run(capsys, "exact", "--n", "40", "--model", "hr", "--mu", "40", "--stat", "classdist")
    assert code == 3 and "MAX_EXACT_N" in err


def test_exact_bad_mu(capsys):
    assert run(capsys, "exact", "--n", "4", "--model", "hr", "--mu", "3", "--stat", "tv")[0] == 2
    assert run(capsys, "exact", "--n", "4", "--model", "hr", "--stat", "tv")[0] == 2
    assert run(capsys, "exact", "--n", "4", "--model", "hr", "--mu", "x.1", "--stat", "tv")[0] == 2


def test_char(capsys):
    assert run(capsys, "char", "--lambda", "2.1", "--mu", "3")[1].strip() == "-1"
    assert run(capsys, "char", "--lambda", "5", "--mu", "3.2")[1].strip() == "1"
    assert run(capsys, "char", "--lambda", "5", "--mu", "3")[0] == 2


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "--n", "7", "--top", "3")
    assert code == 0
    assert out.splitlines() == ["class,size", "6.1,840", "7,720", "4.2.1,630"]


def test_verify_suites(capsys):
    assert run(capsys, "verify", "--suite", "figure1")[0] == 0
    assert run(capsys, "verify", "--suite", "orthogonality", "--max-n", "8")[0] == 0
    assert run(capsys, "verify", "--suite", "oracle", "--max-n", "4")[0] == 0
    assert run(capsys, "verify", "--suite", "bounds", "--max-n", "6")[0] == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    from randsts import verify

    monkeypatch.setattr(verify, "run_suite", lambda name, max_n=None: [verify.Check("x", False, "boom")])
    code, out, _ = run(capsys, "verify", "--suite", "figure1")
    assert code == 4 and "FAIL  x: boom" in out


def test_sample_files(capsys, tmp_path):
    out, summ = tmp_path / "r.csv", tmp_path / "s.json"
    code, stdout, _ = run(
        capsys, "sample", "--n", "30", "--model", "hr", "--mu", "30", "--trials", "50",
        "--seed", "42", "--out", str(out), "--summary", str(summ),
    )
    assert code == 0
    assert json.loads(stdout)["trials"] == 50
    assert json.loads(summ.read_text())["config"]["mu"] == "30"
    assert len(out.read_text().splitlines()) == 51


def test_sample_zero_trials(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, _, _ = run(capsys, "sample", "--n", "5", "--model", "standard", "--trials", "0", "--seed", "1", "--out", str(out))
    assert code == 0 and len(out.read_text().splitlines()) == 1


def test_sample_alpha_and_max_parts(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, stdout, _ = run(
        capsys, "sample", "--n", "1000", "--model", "hr", "--alpha", "1/4", "--trials", "5",
        "--seed", "1", "--out", str(out),
    )
    assert code == 0 and json.loads(stdout)["config"]["max_parts"] == 5


def test_sample_usage_errors(capsys, tmp_path):
    out = str(tmp_path / "r.csv")
    base = ["sample", "--n", "5", "--trials", "3", "--seed", "1", "--out", out]
    assert run(capsys, *base, "--model", "hr")[0] == 2
    assert run(capsys, *base, "--model", "standard", "--mu", "5")[0] == 2
    assert run(capsys, *base, "--model", "hr", "--mu", "4")[0] == 2
    assert run(capsys, *base, "--model", "hr", "--mu-max-parts", "9")[0] == 2


def test_sample_io_error(capsys):
    code, _, err = run(
        capsys, "sample", "--n", "5", "--model", "standard", "--trials", "3", "--seed", "1",
        "--out", "/nonexistent-dir/r.csv",
    )
    assert code == 1 and "I/O error" in err


def test_unknown_flags_and_help(capsys):
    assert run(capsys, "inspect", "--bogus")[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys)[0] == 2
    for sub in ("inspect", "exact", "sample", "char", "classes", "verify"):
        code, out, _ = run(capsys, sub, "--help")
        assert code == 0
        parser = build_parser()
        sp = parser._subparsers._group_actions[0].choices[sub]
        for action in sp._actions:
            for opt in action.option_strings:
                assert opt in out


def test_console_script_entry():
    out = subprocess.run(
        [sys.executable, "-m", "randsts.cli", "classes", "--n", "3"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and out.stdout.splitlines()[0] == "class,size"
