import pytest

import refdecomp

LEFT = "boolean f(boolean a, boolean b) { return !(a && b); }"
RIGHT = "boolean g(boolean x, boolean y) { return !x || !y; }"


def test_normalize_is_canonical():
    text = refdecomp.normalize("int f(int x){return x+1;}")
    assert text == refdecomp.normalize(text)
    assert "return x + 1;" in text


def test_token_delta_and_sim():
    a = "int f(int x) { return x + 1; }"
    b = "int f(int x) { return x + 2; }"
    assert refdecomp.token_delta(a, b) == (1, 1)
    assert refdecomp.sim(a, a, b) == 0.0
    assert refdecomp.sim(b, a, b) == 1.0


def test_check_equivalent():
    assert refdecomp.check_equivalent(LEFT, "boolean f(boolean a, boolean b) { return !a || !b; }") is None
    cx = refdecomp.check_equivalent("int f(int x) { return x; }", "int f(int x) { return x + 1; }")
    assert cx is not None and cx["a"] != cx["b"]


def test_catalog():
    rules = {r["id"]: r for r in refdecomp.list_rules()}
    assert rules["apply-de-morgans-law"]["invertible"]
    assert sum(r["tier"] == "detector" for r in rules.values()) == 8
    sites = refdecomp.rewrites("apply-de-morgans-law", LEFT)
    assert len(sites) == 1
    assert "!a || !b" in sites[0][1]


def test_decompose_report():
    report = refdecomp.decompose(LEFT, RIGHT, snapshots=True)
    assert report["fully_decomposed"] is True
    assert report["sim_final"] == 1.0
    assert [s["rule_id"] for s in report["steps"]] == [
        "rename-method", "rename-parameter", "rename-parameter", "apply-de-morgans-law"]
    assert len(report["snapshots"]) == len(report["steps"]) + 1
    assert all(s["delta_after"] < s["delta_before"] for s in report["steps"])


def test_identical_pair():
    report = refdecomp.decompose(LEFT, LEFT)
    assert report == refdecomp.decompose(LEFT, LEFT)
    assert report["steps"] == [] and report["sim_final"] == 1.0


def test_errors_are_raised():
    with pytest.raises(refdecomp.Error):
        refdecomp.normalize("int f( {")
    with pytest.raises(refdecomp.Error):
        refdecomp.decompose(LEFT, RIGHT, tiers="extended")
