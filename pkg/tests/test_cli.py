"""Command-line surface: subcommands, exit codes, and byte-determinism of
file outputs."""

import json
import os
import subprocess
import sys

import pytest

from zetascope import cli


def run_cli(*args, env_extra=None, timeout=240):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "zetascope.cli", *args],
                          capture_output=True, text=True, env=env,
                          timeout=timeout)


def test_eval_basel():
    r = run_cli("eval", "--s", "2+0i")
    assert r.returncode == 0
    assert "1.64493406685" in r.stdout
    assert "euler_maclaurin" in r.stdout
    assert "error<=" in r.stdout


def test_eval_pole_exits_2():
    r = run_cli("eval", "--s", "1+0i")
    assert r.returncode == 2
    assert "pole" in r.stderr


def test_eval_bad_argument_exits_2():
    r = run_cli("eval", "--s", "spam")
    assert r.returncode == 2


def test_zeros_subcommand():
    r = run_cli("zeros", "--t", "10..42", "--quiet")
    assert r.returncode == 0
    assert "14.134725" in r.stdout
    lines = [l for l in r.stdout.splitlines() if l.strip() and l.lstrip()[0].isdigit()]
    assert len(lines) == 7


def test_gram_subcommand_with_negative_index():
    r = run_cli("gram", "--n", "-1..5", "--quiet")
    assert r.returncode == 0
    assert "9.666908" in r.stdout


def test_audit_summary_and_file(tmp_path):
    out = tmp_path / "audit.txt"
    r = run_cli("audit", "--gram", "120..130", "--out", str(out), "--quiet")
    assert r.returncode == 0
    assert "interval (125, 126) holds 0 zeros" in r.stdout
    assert "interval (126, 127) holds 2 zeros" in r.stdout
    assert "rosser" in r.stdout.lower()
    first = out.read_bytes()
    assert first
    run_cli("audit", "--gram", "120..130", "--out", str(out), "--quiet")
    assert out.read_bytes() == first


def test_s_subcommand():
    r = run_cli("s", "--t", "1000.5", "--quiet")
    assert r.returncode == 0
    assert "-0.019709921" in r.stdout
    assert "649" in r.stdout


def test_sigma0_subcommand():
    r = run_cli("sigma0", "--quiet")
    assert r.returncode == 0
    assert "1.192347337186" in r.stdout


def test_sheet_perm_subcommand():
    r = run_cli("sheet-perm", "--count", "5", "--quiet")
    assert r.returncode == 0
    assert "1 2 3 4 5" in r.stdout.replace(",", " ")


def test_xray_svg_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    args = ("xray", "--function", "hermite7", "--rect", "-4,4,-4,4", "--quiet")
    assert run_cli(*args, "--out", str(a)).returncode == 0
    assert run_cli(*args, "--out", str(b)).returncode == 0
    data = a.read_bytes()
    assert data == b.read_bytes()
    assert data.startswith(b"<?xml")
    assert b"<svg" in data and b"</svg>" in data


def test_xray_structured_output(tmp_path):
    out = tmp_path / "curves.jsonl"
    r = run_cli("xray", "--function", "hermite7", "--rect", "-4,4,-4,4",
                "--format", "structured", "--out", str(out), "--quiet")
    assert r.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines
    for line in lines:
        rec = json.loads(line)
        assert rec["kind"] in ("thick", "thin")


def test_xray_table_text_output():
    r = run_cli("xray", "--function", "hermite7", "--rect", "-4,4,-4,4",
                "--format", "table-text", "--quiet")
    assert r.returncode == 0
    row = r.stdout.strip().splitlines()[-1].split()
    assert len(row) == 3
    float(row[0]), float(row[1])


def test_xray_user_polynomial_with_coeffs():
    r = run_cli("xray", "--function", "user_polynomial", "--coeffs", "1,0,-1",
                "--rect", "-2,2,-2,2", "--format", "structured", "--quiet")
    assert r.returncode == 0


def test_xray_unknown_function_exits_2():
    r = run_cli("xray", "--function", "sine", "--rect", "-2,2,-2,2", "--quiet")
    assert r.returncode == 2


def test_exit_code_3_on_nonconvergence(monkeypatch):
    from zetascope import gram
    from zetascope.engine import ConvergenceError

    def boom(digits=14):
        raise ConvergenceError("did not settle")

    monkeypatch.setattr(gram, "van_de_lune_sigma0", boom)
    assert cli.main(["sigma0", "--quiet"]) == 3


def test_help_documents_conventions():
    top = run_cli("--help")
    assert top.returncode == 0
    for sub in ("eval", "zeros", "gram", "audit", "s", "sigma0", "xray",
                "sheet-perm"):
        r = run_cli(sub, "--help")
        assert r.returncode == 0
    g = run_cli("gram", "--help")
    assert "-1" in g.stdout
    x = run_cli("xray", "--help")
    assert "rect" in x.stdout


def test_output_identical_across_backends():
    args = ("eval", "--s", "0.5+45.3i")
    a = run_cli(*args, env_extra={"ZETASCOPE_BACKEND": "numba"})
    b = run_cli(*args, env_extra={"ZETASCOPE_BACKEND": "numpy"})
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout


def test_threads_flag_accepted():
    r = run_cli("--threads", "1", "eval", "--s", "2+0i")
    assert r.returncode == 0
