import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from quartic.cli import main
from quartic.core import d_table
from quartic.emit import FormatError, emit
from quartic.report import Report
from quartic.tree import build_tree, piecewise_formula


def run(*args, env=None):
    full_env = {**os.environ, **(env or {})}
    return subprocess.run([sys.executable, "-m", "quartic", *args], capture_output=True, env=full_env)


def test_dlm_value_json():
    r = run("dlm", "value", "--l", "1", "--m", "2", "--format", "json")
    assert r.returncode == 0
    assert "15/4" in r.stdout.decode()


def test_table_csv_deterministic():
    a = run("dlm", "table", "--m-max", "6", "--format", "csv")
    b = run("dlm", "table", "--m-max", "6", "--format", "csv")
    assert a.returncode == 0 and a.stdout == b.stdout
    lines = a.stdout.decode().splitlines()
    assert lines[0] == "m,l,d" and lines[4] == "2,0,21/8"


def test_failure_exit_and_witness():
    r = run("verify", "trees", "--l-max", "2", "--count", "32", "--format", "text")
    assert r.returncode == 1
    witness = json.loads(r.stdout)
    assert witness[0]["witness"]["piecewise"] == {"m": 2, "formula": 5, "data": 6}


def test_pair_spacing_passes():
    assert run("verify", "trees", "--l-max", "6", "--count", "64", "--spacing", "pair", "--quiet").returncode == 0


def test_format_mismatch_is_usage_error():
    r = run("tree", "formula", "--l", "3", "--format", "dot")
    assert r.returncode == 2
    assert b"error" in r.stderr


def test_bad_argument_is_usage_error():
    assert main(["dlm", "value", "--l", "3", "--m", "2"]) == 2
    assert main(["dlm", "value", "--l", "-1", "--m", "2"]) == 2
    assert main(["nope"]) == 2


def test_output_dir_env(tmp_path):
    r = run("tree", "build", "--l", "5", "--format", "dot", "-o", "t5.dot", env={"QUARTIC_OUTPUT_DIR": str(tmp_path)})
    assert r.returncode == 0 and r.stdout == b""
    text = (tmp_path / "t5.dot").read_text()
    assert text.startswith("digraph T5") and "shape=box" in text


def test_jobs_do_not_change_output():
    one = run("verify", "valuations", "--l-max", "6", "--m-max", "40", "--format", "json", "--quiet")
    two = run("verify", "valuations", "--l-max", "6", "--m-max", "40", "--format", "json", "--quiet", "--jobs", "2")
    assert one.returncode == two.returncode == 0
    assert one.stdout == two.stdout


def test_probe_never_fails_the_process():
    r = run("concavity", "probe", "--seq", "1,1,1", "--depth", "3", "--format", "json")
    assert r.returncode == 0
    assert json.loads(r.stdout)["passed"] is False


def test_q_and_roots_and_integral():
    assert run("q", "gaussian", "--n", "4", "--k", "2").stdout.decode().strip() == "1 + q + 2*q^2 + q^3 + q^4"
    assert run("roots", "certify", "--l-max", "6", "--quiet").returncode == 0
    assert run("integral", "check", "--a", "5/2", "--m", "3", "--quiet").returncode == 0


def test_emit_writers():
    assert emit(piecewise_formula(3), "text").decode().splitlines()[0] == "nu_2(C_{3,m}) = 7 + nu_2((m+1)/2)  if m = 1 mod 2"
    assert emit(piecewise_formula(3), "csv").decode().splitlines()[1] == "2,1,7,1"
    assert json.loads(emit(build_tree(3), "json"))["terminal_counts"] == {"1": 1, "2": 2}
    assert b"21/8" in emit(d_table(2), "csv")
    with pytest.raises(FormatError):
        emit(d_table(2), "dot")


def test_report_requires_witness_on_failure():
    with pytest.raises(ValueError):
        Report("x", {}, False)
    assert Report("x", {"a": Fraction(1, 2)}, True).to_dict()["range"] == {"a": Fraction(1, 2)}
