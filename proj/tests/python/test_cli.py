"""End-to-end CLI tests: subcommands, file formats, exit codes, and the
byte-for-byte reproducibility contract."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("LIG_CLI", "lig")


def run(*args, cwd):
    return subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)


def test_generate_solve_roundtrip(tmp_path):
    r = run("generate", "--family", "uniform", "--n", "10", "--p", "0.5",
            "--flip-p", "0.5", "--seed", "11", "--out", "g.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    game = json.loads((tmp_path / "g.json").read_text())
    assert game["n"] == 10 and "arcs" in game and "thresholds" in game
    assert (tmp_path / "g.json.manifest.json").exists()

    r = run("solve", "--game", "g.json", "--method", "backtrack", "--out", "psne.txt", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "psne.txt").read_text().splitlines()
    stats = json.loads((tmp_path / "psne.txt.stats.json").read_text())
    assert stats["psne_found"] == len(lines)
    for line in lines:
        assert set(line.split(",")) <= {"1", "-1"}

    # determinism: regenerating reproduces the artifact byte for byte
    before = (tmp_path / "g.json").read_bytes()
    run("generate", "--family", "uniform", "--n", "10", "--p", "0.5",
        "--flip-p", "0.5", "--seed", "11", "--out", "g2.json", cwd=tmp_path)
    assert (tmp_path / "g2.json").read_bytes() == before


def test_method_agreement_on_forest(tmp_path):
    # a path graph is a forest: tree and backtrack must agree
    game = {"n": 3, "thresholds": [0.0, 0.0, 0.0],
            "arcs": [[0, 1, 1.0], [1, 0, 1.0], [1, 2, 1.0], [2, 1, 1.0]]}
    (tmp_path / "g.json").write_text(json.dumps(game))
    assert run("solve", "--game", "g.json", "--method", "backtrack", "--out", "bt.txt",
               cwd=tmp_path).returncode == 0
    assert run("solve", "--game", "g.json", "--method", "tree", "--out", "tr.txt",
               cwd=tmp_path).returncode == 0
    bt = (tmp_path / "bt.txt").read_text().splitlines()
    tr = (tmp_path / "tr.txt").read_text().splitlines()
    assert len(tr) == 1 and tr[0] in bt

    # auto picks the tree method here
    assert run("solve", "--game", "g.json", "--out", "auto.txt", cwd=tmp_path).returncode == 0
    stats = json.loads((tmp_path / "auto.txt.stats.json").read_text())
    assert stats["method"] == "tree"

    # divide and conquer agrees with backtracking
    assert run("solve", "--game", "g.json", "--method", "dnc", "--out", "dc.txt",
               cwd=tmp_path).returncode == 0
    assert (tmp_path / "dc.txt").read_text() == (tmp_path / "bt.txt").read_text()

    # monotone dynamics apply here (all weights nonnegative) and both
    # extreme fixed points are equilibria listed by the full enumeration
    r = run("solve", "--game", "g.json", "--method", "supermodular", "--out", "sm.txt",
            cwd=tmp_path)
    assert r.returncode == 0
    for line in (tmp_path / "sm.txt").read_text().splitlines():
        assert line in bt

    # tree on a cyclic game is an explicit input error
    cyc = {"n": 3, "thresholds": [0.0, 0.0, 0.0],
           "arcs": [[0, 1, 1.0], [1, 2, 1.0], [2, 0, 1.0]]}
    (tmp_path / "cyc.json").write_text(json.dumps(cyc))
    r = run("solve", "--game", "cyc.json", "--method", "tree", "--out", "x.txt", cwd=tmp_path)
    assert r.returncode == 4


def test_count_only_and_budget(tmp_path):
    run("generate", "--family", "uniform", "--n", "12", "--seed", "5", "--out", "g.json",
        cwd=tmp_path)
    r = run("solve", "--game", "g.json", "--method", "backtrack", "--count-only",
            "--out", "count.json", cwd=tmp_path)
    assert r.returncode == 0
    count = json.loads((tmp_path / "count.json").read_text())
    assert "count" in count and count["count"] >= 0

    r = run("solve", "--game", "g.json", "--method", "backtrack", "--budget", "3",
            "--out", "partial.txt", cwd=tmp_path)
    assert r.returncode == 3  # budget exhaustion is a distinct exit code


def test_influential_and_exit_codes(tmp_path):
    run("generate", "--family", "supreme-court", "--out", "sc.json", cwd=tmp_path)
    run("solve", "--game", "sc.json", "--method", "backtrack", "--out", "psne.txt", cwd=tmp_path)
    (tmp_path / "goal.txt").write_text("1,1,1,1,1,1,1,1,1\n")

    r = run("influential", "--game", "sc.json", "--psne", "psne.txt", "--goal", "target=goal.txt",
            "--exact", "--explore-ties", "--out", "infl.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    res = json.loads((tmp_path / "infl.json").read_text())
    assert res["consistent_psne"] == 1
    assert len(res["selected"]) == 2
    assert (tmp_path / "infl.json.dag.json").exists()

    # a non-equilibrium target is rejected
    (tmp_path / "bad.txt").write_text("1,-1,1,-1,1,-1,1,-1,1\n")
    r = run("influential", "--game", "sc.json", "--psne", "psne.txt", "--goal", "target=bad.txt",
            "--out", "x.json", cwd=tmp_path)
    assert r.returncode == 4

    # unknown flags are a usage error
    assert run("influential", "--nope", cwd=tmp_path).returncode == 4


def test_scenario_modes(tmp_path):
    game = {"n": 5, "thresholds": [0.0, -0.5, -0.5, -0.5, 0.0],
            "arcs": [[0, 1, 2.0], [0, 2, 2.0], [0, 3, 2.0],
                     [1, 2, 1.0], [2, 1, 1.0], [1, 3, 1.0], [3, 1, 1.0],
                     [2, 3, 1.0], [3, 2, 1.0],
                     [1, 0, -1.0], [2, 0, -1.0], [3, 0, -1.0],
                     [4, 1, -1.0], [4, 2, -1.0], [4, 3, -1.0],
                     [1, 4, -1.0], [2, 4, -1.0], [3, 4, -1.0],
                     [4, 0, -2.0]]}
    (tmp_path / "g.json").write_text(json.dumps(game))

    r = run("scenario", "--game", "g.json", "--mode", "break", "--quota", "3", "--exact",
            "--out", "break.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    rep = json.loads((tmp_path / "break.json").read_text())
    assert rep["cover_size"] >= 1 and rep["stable_cloture_count"] == 1

    # preventers force no votes; the trap game's non-cloture outcome is reachable
    r = run("scenario", "--game", "g.json", "--mode", "prevent", "--quota", "3", "--exact",
            "--out", "prevent.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    prep = json.loads((tmp_path / "prevent.json").read_text())
    assert prep["cover_size"] >= 1

    r = run("scenario", "--game", "g.json", "--mode", "diffusion", "--quota", "3",
            "--k-max", "2", "--out", "diff.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    rep = json.loads((tmp_path / "diff.json").read_text())
    stables = [h["stable"] for h in rep["hits"]]
    assert True in stables and False in stables

    # an unreachable target set is infeasible, exit code 2
    run("generate", "--family", "uniform", "--n", "6", "--flip-p", "0.0", "--seed", "3",
        "--out", "easy.json", cwd=tmp_path)
    r = run("scenario", "--game", "easy.json", "--mode", "break", "--quota", "6",
            "--out", "x.json", cwd=tmp_path)
    assert r.returncode in (0, 2)  # depends on whether all-up is an equilibrium


def test_learn_and_bench(tmp_path):
    rows = ["a,b,c"] + ["1,1,-1"] * 12 + ["-1,-1,1"] * 12
    (tmp_path / "votes.csv").write_text("\n".join(rows) + "\n")
    r = run("learn", "--votes", "votes.csv", "--out", "learned.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    rep = json.loads((tmp_path / "learned.json.report.json").read_text())
    assert rep["representation_rate"] == 1.0

    r = run("bench", "--suite", "pref-attach", "--n", "8", "--trials", "2", "--seed", "1",
            "--out", "bench.csv", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    header = (tmp_path / "bench.csv").read_text().splitlines()[0]
    assert header == "n,trials,avg_psne,ci95_psne,avg_time_ms"

    # the table-sweep suites carry the documented column contracts and are
    # deterministic under a fixed seed
    r = run("bench", "--suite", "uniform", "--n", "10", "--trials", "3", "--seed", "2",
            "--out", "uni.csv", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "uni.csv").read_text().splitlines()
    assert lines[0] == "p,trials,avg_psne,ci95_psne,avg_visits_per_eq,ci95_visits_per_eq,avg_time_ms"
    assert len(lines) == 10  # nine flip probabilities

    r = run("bench", "--suite", "greedy-vs-exact", "--n", "10", "--trials", "3", "--seed", "2",
            "--out", "gve.csv", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    header = (tmp_path / "gve.csv").read_text().splitlines()[0]
    assert header == "p,trials,avg_greedy,ci95_greedy,avg_exact,ci95_exact,pct_equal,pct_within1,pct_within2"

    run("bench", "--suite", "greedy-vs-exact", "--n", "10", "--trials", "3", "--seed", "2",
        "--out", "gve2.csv", cwd=tmp_path)
    first = (tmp_path / "gve.csv").read_text()
    second = (tmp_path / "gve2.csv").read_text()
    assert [l.rsplit(",", 1)[0] for l in first.splitlines()] == \
           [l.rsplit(",", 1)[0] for l in second.splitlines()]  # all but wall time identical
