import json
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def run_cli(*args, timeout=300):
    return subprocess.run(
        [sys.executable, "-m", "envshift", *args],
        capture_output=True,
        text=True,
        timeout=timeout,
        cwd=str(REPO),
    )


def test_exit_code_zero_on_pass(tmp_path):
    out = tmp_path / "rep.json"
    r = run_cli(
        "verify", "theorem1", "--algebra", "gl:2", "--max-power", "2",
        "--A", "diag:1,2", "--out", str(out),
    )
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert rep["summary"] == {"pass": 3, "fail": 0, "error": 0}
    assert rep["parameters"]["seed"] == 42  # default seed echoed


def test_contract_invocation_gl3():
    r = run_cli(
        "verify", "theorem1", "--algebra", "gl:3", "--A", "diag:1,2,0",
        "--max-power", "3",
    )
    assert r.returncode == 0, r.stderr
    assert "0 fail" in r.stdout


def test_symbolic_whole_subspace_runs():
    r = run_cli("verify", "theorem1", "--algebra", "gl:2", "--A", "symbolic",
                "--max-power", "2")
    assert r.returncode == 0 and "symbolic-full" in r.stdout
    r = run_cli("verify", "theorem2", "--algebra", "sp:1", "--A", "symbolic",
                "--max-power", "2")
    assert r.returncode == 0 and "symbolic-sign-minus" in r.stdout


def test_contract_invocation_prop3_prints_coefficients():
    r = run_cli("verify", "prop3", "--algebra", "so:3", "--max-power", "3")
    assert r.returncode == 0
    assert "C_p for X^4" in r.stdout
    # the leading coefficient printed last is (-1)^(M+1)
    line = [l for l in r.stdout.splitlines() if l.startswith("C_p for X^4")][0]
    assert line.rstrip("]").endswith("1") and ", 1" in line


def test_exit_code_one_on_fail_with_witness(tmp_path):
    out = tmp_path / "rep.json"
    r = run_cli(
        "verify", "theorem2", "--algebra", "so:4",
        "--A", "matrix:1,0,0,1;0,0,0,0;0,0,0,0;0,0,0,0",
        "--max-power", "3", "--out", str(out),
    )
    assert r.returncode == 1
    rep = json.loads(out.read_text())
    fails = [c for c in rep["checks"] if c["outcome"] == "FAIL"]
    assert fails
    # witness integrity: every FAIL residual re-parses to a nonzero polynomial
    from envshift.algebra import parse_algebra
    from envshift.pbw import parse

    spec = parse_algebra("so:4")
    for c in fails:
        assert c["residual"]
        assert not parse(spec, c["residual"]).is_zero


def test_exit_code_two_on_bad_input():
    assert run_cli("verify", "theorem1", "--algebra", "so:4").returncode == 2
    assert run_cli("verify", "theorem1", "--algebra", "nonsense").returncode == 2
    assert run_cli("verify", "theorem1", "--bogus-flag", "1").returncode == 2
    assert run_cli("chain", "--file", "/nonexistent/chain.json").returncode == 2


def test_chain_command_invalid_step_size(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"algebra": "gl:4", "steps": [{"k": 3}]}))
    assert run_cli("chain", "--file", str(f)).returncode == 2


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "prop3", "--algebra", "so:3", "--max-power", "2"]
    r1 = run_cli(*args, "--out", str(a))
    r2 = run_cli(*args, "--out", str(b))
    assert r1.returncode == r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_chain_command_report(tmp_path):
    out = tmp_path / "rep.json"
    r = run_cli(
        "chain", "--file", str(REPO / "scripts" / "chains" / "gl3.json"),
        "--trials", "3", "--seed", "7", "--out", str(out),
    )
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    ids = [c["id"] for c in rep["checks"]]
    assert ids == ["pairwise-commutativity", "transcendency-rank"]
    assert rep["parameters"]["certificate"]["rank"] == 6
    assert rep["parameters"]["certificate"]["seed"] == 7


def test_expand_command_prints_components():
    r = run_cli("expand", "--algebra", "gl:2", "--M", "2", "--A", "diag:1,2")
    assert r.returncode == 0
    assert "S_A^(1,2) = 2*X[1,1] + 4*X[2,2]" in r.stdout
    assert "S_A^(2,2) = 5" in r.stdout


def test_classical_commands():
    assert run_cli(
        "classical", "duality", "--algebra", "gl:2", "--M", "2", "--k", "1",
        "--seeds", "3",
    ).returncode == 0
    assert run_cli(
        "classical", "tangent", "--algebra", "gl:3", "--A", "diag:1,2,0"
    ).returncode == 0
    assert run_cli(
        "classical", "lemma2", "--algebra", "gl:4", "--A", "diag:1,2,0,0",
        "--points", "2",
    ).returncode == 0


def test_progress_streams_to_stderr_not_report(tmp_path):
    out = tmp_path / "rep.json"
    r = run_cli(
        "verify", "casimir-central", "--algebra", "gl:2", "--max-power", "2",
        "--out", str(out),
    )
    assert "check " in r.stderr
    assert "check " not in out.read_text()
