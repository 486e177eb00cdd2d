"""End-to-end checks of the refdecomp command-line tool."""
import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ["REFDECOMP_CLI"]
SEEDS = Path(os.environ["REFDECOMP_SEEDS"])


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("REFDECOMP_SEED", None)
    full_env.update(env or {})
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=full_env)


def write(path, text):
    path.write_text(text)
    return path


def catalog():
    out = run("catalog", "list")
    assert out.returncode == 0
    rows = [line.split("\t") for line in out.stdout.splitlines()]
    assert all(len(r) == 5 for r in rows)
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)
    return {r[0]: r for r in rows}


def test_catalog_list_format():
    rows = catalog()
    assert rows["apply-de-morgans-law"][1:4] == ["extended", "Apply De Morgan's Law", "yes"]
    for rule_id, (_, _, _, invertible, inverse) in rows.items():
        assert (invertible == "yes") == bool(inverse)
        if inverse:
            assert rows[inverse][4] == rule_id


def test_identical_files(tmp_path):
    f = write(tmp_path / "m.mj", "int f(int x) { return x * 2; }")
    out = run("decompose", f, f)
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["sim_final"] == 1.0
    assert report["steps"] == []
    assert report["fully_decomposed"] is True
    assert '"sim_final": 1.0' in out.stdout


def test_malformed_file_exits_2(tmp_path):
    bad = write(tmp_path / "bad.mj", "int f( {")
    good = write(tmp_path / "good.mj", "int f() { return 1; }")
    assert run("decompose", bad, good).returncode == 2
    assert run("decompose", good).returncode == 2
    assert run("decompose", good, good, "--tiers", "extended").returncode == 2


def test_empty_corpus_exits_2(tmp_path):
    assert run("eval", tmp_path, "-o", tmp_path / "out").returncode == 2


def test_counterexample_exits_3(tmp_path):
    a = write(tmp_path / "a.mj", "int f(int x) { return x + 1; }")
    b = write(tmp_path / "b.mj", "int f(int x) { return x + 2; }")
    assert run("check-equivalence", a, a).returncode == 0
    out = run("check-equivalence", a, b)
    assert out.returncode == 3
    assert "counterexample" in out.stdout


def test_seed_from_environment(tmp_path):
    a = run("generate", SEEDS, tmp_path / "a", "-n", "6", env={"REFDECOMP_SEED": "5"})
    b = run("generate", SEEDS, tmp_path / "b", "-n", "6", "--seed", "5")
    assert a.returncode == 0 and b.returncode == 0
    for pair in sorted(p.name for p in (tmp_path / "a").iterdir()):
        for name in ("left.mj", "right.mj", "meta.json"):
            assert (tmp_path / "a" / pair / name).read_bytes() == (tmp_path / "b" / pair / name).read_bytes()
    assert run("catalog", "list", env={"REFDECOMP_SEED": "nope"}).returncode == 2


def test_single_scramble_is_undone_by_its_inverse(tmp_path):
    corpus = tmp_path / "corpus"
    assert run("generate", SEEDS, corpus, "-n", "40", "--k-max", "1", "--seed", "3").returncode == 0
    inverse = {rule_id: row[4] for rule_id, row in catalog().items()}
    checked = 0
    for pair in sorted(corpus.iterdir()):
        meta = json.loads((pair / "meta.json").read_text())
        if meta["k"] != 1:
            continue
        out = run("decompose", pair / "left.mj", pair / "right.mj", "--emit-snapshots")
        assert out.returncode == 0
        report = json.loads(out.stdout)
        assert report["fully_decomposed"], pair.name
        assert [s["rule_id"] for s in report["steps"]] == [inverse[meta["ops"][0]["rule_id"]]], pair.name
        checked += 1
        report_path = write(tmp_path / f"{pair.name}.json", out.stdout)
        verify = run("verify-trace", report_path, pair / "right.mj")
        assert verify.returncode == 0, verify.stdout
    assert checked >= 10


def test_eval_writes_sorted_csv(tmp_path):
    corpus = tmp_path / "corpus"
    assert run("generate", SEEDS, corpus, "-n", "8", "--seed", "1").returncode == 0
    out_dir = tmp_path / "out"
    out = run("eval", corpus, "-o", out_dir, "-j", "2")
    assert out.returncode == 0
    csv = (out_dir / "sims.csv").read_bytes()
    assert b"\r" not in csv
    lines = csv.decode().splitlines()
    assert lines[0] == "pair_id,tier_config,sim_final"
    for tier in ("detector", "all"):
        sims = [float(l.split(",")[2]) for l in lines[1:] if l.split(",")[1] == tier]
        assert len(sims) == 8
        assert sims == sorted(sims)
    summary = json.loads((out_dir / "summary.json").read_text())
    assert {a["tier_config"] for a in summary["aggregates"]} == {"detector", "all"}
    assert len(list((out_dir / "traces" / "all").glob("*.json"))) == 8
