import json

import pytest

from mapchains.cli import main, parse_degrees, parse_space
from mapchains.simplicial import circle_triangle, to_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_homology_of_circle(capsys):
    code, out, _ = run(capsys, "homology", "--space", "sphere:1", "--degrees", "0..3", "--format", "records")
    assert code == 0
    assert [r["rank"] for r in records(out)] == [0, 1, 0, 0]


def test_homology_of_bz2(capsys):
    code, out, _ = run(capsys, "homology", "--space", "nerve:2", "--degrees", "1..4", "--format", "records")
    assert [r["rank"] for r in records(out)] == [1, 1, 1, 1]


def test_homology_of_simplex_with_disjoint_basepoint(capsys):
    # two components: the simplex and the added basepoint
    code, out, _ = run(capsys, "homology", "--space", "delta:2", "--degrees", "0..3", "--format", "records")
    assert [r["rank"] for r in records(out)] == [1, 0, 0, 0]


def test_homology_table(capsys):
    code, out, _ = run(capsys, "homology", "--space", "sphere:1", "--degrees", "1")
    assert code == 0
    assert out.splitlines()[-1].split() == ["1", "1"]


def test_homology_of_a_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    to_file(circle_triangle(), path)
    code, out, _ = run(capsys, "homology", "--space", f"@{path}", "--degrees", "0..2", "--format", "records")
    assert [r["rank"] for r in records(out)] == [0, 1, 0]


def test_models_ranks_agree_and_direct_h0(capsys):
    code, out, _ = run(capsys, "models", "--pmax", "2", "--qmax", "3", "--format", "records")
    recs = records(out)
    ranks = {}
    for r in recs:
        if r["kind"] == "bidegree_rank":
            ranks.setdefault((r["p"], r["q"]), {})[r["model"]] = r["rank"]
    assert len(ranks) == 12 and all(v["D"] == v["G"] for v in ranks.values())
    direct = {r["degree"]: r["rank"] for r in recs if r["kind"] == "mapspace_homology"}
    assert direct[0] == 1
    verdicts = [r for r in recs if r["kind"] == "stabilization"]
    assert [v["model"] for v in verdicts] == ["D", "G"]
    # exit status reflects the stabilization verdicts
    assert code == (0 if all(v["stable"] for v in verdicts) else 1)


def test_models_trivial_source(capsys):
    code, out, _ = run(capsys, "models", "--space", "point", "--pmax", "2", "--qmax", "2", "--format", "records")
    assert code == 0
    assert all(r["rank"] == 0 for r in records(out) if r["kind"] in ("bidegree_rank", "homology"))


def test_models_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MAPCHAINS_BUDGET", "2")
    code, out, _ = run(capsys, "models", "--pmax", "2", "--qmax", "2", "--format", "records")
    assert code == 1
    assert any(r["kind"] == "error" for r in records(out))


def test_verify_default_pair(capsys):
    code, out, _ = run(capsys, "verify", "--pmax", "2", "--qmax", "2")
    assert code == 0
    assert out.count("PASS") == 13 and "FAIL" not in out


def test_verify_s0_s1(capsys):
    code, out, _ = run(capsys, "verify", "--space", "sphere:0", "--target", "sphere:1", "--pmax", "2", "--qmax", "2",
                       "--format", "records")
    assert code == 0
    assert all(r["passed"] for r in records(out))


def test_verify_budget_failure_is_nonzero(capsys):
    code, out, _ = run(capsys, "verify", "--budget", "1", "--pmax", "1", "--qmax", "1")
    assert code == 1
    assert "FAIL" in out


def test_records_are_deterministic(capsys):
    argv = ("verify", "--space", "sphere:0", "--target", "sphere:1", "--pmax", "2", "--qmax", "2",
            "--format", "records")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert all(r["schema"] == "mapchains/1" for r in records(first))


@pytest.mark.parametrize("argv", [
    ("homology", "--space", "sphere:1", "--prime", "4"),
    ("homology", "--space", "torus"),
    ("homology", "--space", "sphere:x"),
    ("homology", "--space", "sphere:1", "--degrees", "3..1"),
    ("models", "--pmax", "-1"),
    ("homology", "--space", "@/nonexistent/space.json"),
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("mapchains:")


def test_parsers():
    assert parse_degrees("0..3") == [0, 1, 2, 3]
    assert parse_degrees("2") == [2]
    assert parse_space("nerve:3").name == "BZ3"
