"""End-to-end command line: exit codes, outputs, JSON determinism, replay."""

import json
import subprocess
import sys

from hicourant.dsl import parse_multivec, parse_scalar
from hicourant.exterior import Context, Form, ext_d, lie_multivec, wedge
from hicourant.nambu import NambuCandidate, pi_sharp


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "hicourant.cli", *args], capture_output=True, text=True
    )


def test_bracket_dorfman_example():
    result = run_cli("bracket", "dorfman", "-m", "2", "-n", "1", "(@1 ; x2*dx1)", "(@2 ; 0)")
    assert result.returncode == 0
    assert result.stdout.strip() == "(0 ; -dx1)"


def test_bracket_courant_self_is_zero():
    result = run_cli("bracket", "courant", "-m", "2", "-n", "1", "(@1 ; x2*dx1)", "(@1 ; x2*dx1)")
    assert result.returncode == 0
    assert result.stdout.strip() == "(0 ; 0)"


def test_bracket_deformed_requires_theta():
    result = run_cli("bracket", "deformed", "-m", "3", "-n", "1", "(@1 ; 0)", "(@2 ; 0)")
    assert result.returncode == 2
    assert "--theta" in result.stderr


def test_bracket_deformed_example():
    result = run_cli(
        "bracket", "deformed", "-m", "3", "-n", "1",
        "--theta", "dx1^dx2^dx3", "(@1 ; 0)", "(@2 ; 0)",
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "(0 ; dx3)"


def test_parse_error_exit_code_and_position():
    result = run_cli("bracket", "dorfman", "-m", "2", "-n", "1", "(@1 ; x2*dx1", "(@2 ; 0)")
    assert result.returncode == 2
    assert "position" in result.stderr


def test_check_dorfman_passes():
    result = run_cli("check", "dorfman-axioms", "-m", "2", "-n", "1", "--samples", "10", "--seed", "7")
    assert result.returncode == 0
    assert "result: PASSED" in result.stdout


def test_check_nambu_normal_form():
    result = run_cli(
        "check", "nambu", "-m", "3", "-n", "2", "--pi", "@1^@2^@3", "--degree", "2", "--samples", "6"
    )
    assert result.returncode == 0


def test_check_plectic_nonclosed_fails_with_witness():
    result = run_cli(
        "check", "plectic", "-m", "3", "-n", "1", "--omega", "x1*dx2^dx3", "--samples", "6"
    )
    assert result.returncode == 1
    assert "FAIL" in result.stdout
    assert "residual" in result.stdout


def test_check_admissible_refuses_nonclosed():
    result = run_cli(
        "check", "admissible", "-m", "3", "-n", "1", "--omega", "x1*dx2^dx3", "--samples", "4"
    )
    assert result.returncode == 2
    assert "closed" in result.stderr


def test_check_missing_structure_input():
    result = run_cli("check", "nambu", "-m", "3", "-n", "2", "--samples", "4")
    assert result.returncode == 2
    assert "--pi" in result.stderr


def test_solve_hamiltonian_example():
    result = run_cli(
        "solve-hamiltonian", "-m", "3", "-n", "2", "--omega", "dx1^dx2^dx3", "--xi", "x3*dx2"
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "-@1"


def test_solve_hamiltonian_zero_differential():
    result = run_cli("solve-hamiltonian", "-m", "3", "-n", "1", "--omega", "dx1^dx2", "--xi", "5")
    assert result.returncode == 0
    assert result.stdout.strip() == "0"


def test_solve_hamiltonian_inconsistent():
    result = run_cli(
        "solve-hamiltonian", "-m", "3", "-n", "1", "--omega", "dx1^dx2", "--xi", "x1*x3"
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "not-hamiltonian"


def test_solve_hamiltonian_nonconstant_needs_candidate():
    result = run_cli(
        "solve-hamiltonian", "-m", "3", "-n", "2", "--omega", "x1*dx1^dx2^dx3", "--xi", "x3*dx2"
    )
    assert result.returncode == 2
    assert "--with-x" in result.stderr


def test_solve_hamiltonian_verify_candidate():
    result = run_cli(
        "solve-hamiltonian", "-m", "3", "-n", "2",
        "--omega", "x1*dx1^dx2^dx3", "--xi=-1/2*x1*x1*dx3", "--with-x", "@2",
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "@2"
    rejected = run_cli(
        "solve-hamiltonian", "-m", "3", "-n", "2",
        "--omega", "x1*dx1^dx2^dx3", "--xi=-1/2*x1*x1*dx3", "--with-x", "@1",
    )
    assert rejected.returncode == 1
    assert rejected.stdout.strip() == "candidate-rejected"


SUITE_MATRIX = [
    ("courant-axioms", "-m", "2", "-n", "1", "--samples", "6"),
    ("dorfman-axioms", "-m", "2", "-n", "1", "--samples", "6"),
    ("deformation", "-m", "3", "-n", "1", "--theta", "dx1^dx2^dx3", "--samples", "4"),
    ("gauge", "-m", "3", "-n", "1", "--phi", "x3*dx1^dx2", "--samples", "4"),
    ("nambu", "-m", "3", "-n", "2", "--pi", "@1^@2^@3", "--samples", "4"),
    ("plectic", "-m", "3", "-n", "2", "--omega", "dx1^dx2^dx3", "--samples", "4"),
    ("admissible", "-m", "3", "-n", "2", "--omega", "dx1^dx2^dx3", "--samples", "4"),
]


def test_json_reports_are_byte_identical_across_runs():
    for row in SUITE_MATRIX:
        args = ["check", row[0], *row[1:], "--seed", "13", "--json"]
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.stdout == second.stdout, row[0]
        report = json.loads(first.stdout)
        assert report["suite"] == row[0]
        assert report["seed"] == 13
        assert report["passed"] is True
        assert {"suite", "m", "n", "seed", "params", "quantifier_scope", "checks", "passed"} <= set(
            report
        )
        for check in report["checks"]:
            assert {"name", "identity", "cases", "failures", "passed"} <= set(check)


def test_json_failure_witness_replays():
    result = run_cli(
        "check", "nambu", "-m", "4", "-n", "2",
        "--pi", "@1^@2^@3 + x2*@2^@3^@4", "--samples", "4", "--seed", "11", "--json",
    )
    assert result.returncode == 1
    report = json.loads(result.stdout)
    fundamental = next(c for c in report["checks"] if c["name"] == "fundamental_identity")
    witness = fundamental["failures"][0]

    ctx = Context(4, 2)
    candidate = NambuCandidate(ctx, parse_multivec("@1^@2^@3 + x2*@2^@3^@4", ctx, 3))
    omega = None
    for text in witness["inputs"]:
        df = ext_d(Form(4, 0, {(): parse_scalar(text, ctx)}))
        omega = df if omega is None else wedge(omega, df)
    residual = lie_multivec(pi_sharp(candidate, omega), candidate.pi)
    assert str(residual) == witness["residual"]
    assert not residual.is_zero
