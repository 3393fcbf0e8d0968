from __future__ import annotations

from pathlib import Path

import pytest

from trcc8.cli import main
from trcc8.fileformat import format_network, parse_network
from trcc8.network import algebraic_closure
from trcc8.verify import build_counterexample_network

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_closure_of_partition_example(capsys):
    code, out, _ = run(capsys, "closure", str(SAMPLES / "partition_example.qcn"))
    assert code == 0
    assert "x y : {TPP} {PO} {EC} {DC}" in out.splitlines()


def test_closure_output_round_trips(capsys, tmp_path):
    path = write(tmp_path, "c.qcn", format_network(build_counterexample_network()))
    code, out, _ = run(capsys, "closure", path)
    assert code == 0
    reparsed = parse_network(out)
    assert algebraic_closure(reparsed) == reparsed
    assert reparsed == algebraic_closure(build_counterexample_network())


def test_closure_of_inconsistent_network_exits_1(capsys, tmp_path):
    path = write(tmp_path, "bad.qcn", "length: 2\nvars: x y\nx y : {NTPP} {DC}\n")
    code, out, _ = run(capsys, "closure", path)
    assert code == 1 and "{}" in out


def test_solve_counterexample_is_unsat(capsys):
    code, out, _ = run(capsys, "solve", str(SAMPLES / "counterexample.qcn"))
    assert code == 1 and out.startswith("UNSAT")


def test_solve_universal_is_sat(capsys):
    code, out, _ = run(capsys, "solve", str(SAMPLES / "universal.qcn"))
    assert code == 0 and out.startswith("SAT")
    witness = parse_network(out.split("\n", 1)[1])
    assert witness.is_scenario()


def test_solve_force_search(capsys):
    code, out, _ = run(capsys, "solve", "--force-search", str(SAMPLES / "partition_example.qcn"))
    assert code == 0 and out.splitlines()[0] == "SAT (search)"
    assert "x y : {TPP} {PO} {EC} {DC}" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", str(SAMPLES / "partition_example.qcn"))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1: H8 Q8 C8 Hntpp FULL"
    assert "THEOREM1" in lines


def test_plan(capsys):
    start, goal = str(SAMPLES / "start_dc.qcn"), str(SAMPLES / "goal_po.qcn")
    code, out, _ = run(capsys, "plan", "--start", start, "--goal", goal, "--steps", "3")
    assert code == 0 and "x y : {DC} {EC} {PO}" in out
    code, out, _ = run(capsys, "plan", "--start", start, "--goal", goal, "--steps", "2")
    assert code == 1 and out.startswith("UNSAT")
    code, _, err = run(capsys, "plan", "--start", start, "--goal", goal, "--steps", "3",
                       "--semantics", "partition")
    assert code == 2 and "even" in err


def test_plan_infeasible_endpoint_is_unsat(capsys, tmp_path):
    only_po = write(tmp_path, "c.qcn", "vars: x y\nx y : {PO}\n")
    code, out, _ = run(capsys, "plan", "--start", str(SAMPLES / "start_dc.qcn"),
                       "--goal", str(SAMPLES / "goal_po.qcn"), "--steps", "3",
                       "--constraints", only_po)
    assert code == 1 and "start" in out


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0 and out.count("[PASS]") == 7
    code, out, _ = run(capsys, "verify-paper", "--flip-partition-parity")
    assert code == 3 and "[FAIL] 7" in out


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["solve"], ["plan", "--start", "a"], ["plan", "--steps", "x"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_parse_error_exit_code(capsys, tmp_path):
    path = write(tmp_path, "bad.qcn", "vars: x y\nx y : {ZZ}\n")
    code, _, err = run(capsys, "solve", path)
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "closure", str(tmp_path / "missing.qcn"))
    assert code == 2


@pytest.mark.parametrize("sub", ["closure", "classify", "solve", "plan", "verify-paper"])
def test_help(capsys, sub):
    assert main([sub, "--help"]) == 0
    assert "usage" in capsys.readouterr().out
