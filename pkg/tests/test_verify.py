import json

import numpy as np
import pytest

from amalgam_ft import VerificationReport, run_suites
from amalgam_ft.verify import SUITES, Corpus, _Context, default_workers, load_pinned


def test_corpus_is_deterministic():
    a, b = Corpus(42, 5), Corpus(42, 5)
    for x, y in zip(a.functions + a.continuous, b.functions + b.continuous):
        assert x.to_dict() == y.to_dict()
    assert all(np.array_equal(x.entries, y.entries) for x, y in zip(a.sequences, b.sequences))
    assert Corpus(43, 5).functions[0].to_dict() != a.functions[0].to_dict()


def test_corpus_prefix_stable():
    # a larger corpus extends a smaller one
    small, big = Corpus(7, 3), Corpus(7, 8)
    assert [f.to_dict() for f in small.functions] == [f.to_dict() for f in big.functions[:3]]


def test_corpus_shapes():
    c = Corpus(42, 20)
    for f in c.functions + c.continuous:
        t = f.breakpoints
        assert 3 <= t.size <= 12 and t[0] >= 0 and t[-1] <= 8
        assert np.diff(t).min() >= 0.05
    for f in c.continuous:
        assert not f.has_jump()
    assert all(4 <= len(s) <= 128 and np.abs(s.entries).max() <= 1 for s in c.sequences)
    with pytest.raises(ValueError):
        Corpus(1, 0)


def test_pinned_file():
    pin = load_pinned()
    assert pin["seed"] == 42 and pin["corpus_size"] == 20
    assert set(pin["constants"]) == {
        "thm-3.1-ratio/gamma=0",
        "thm-3.1-ratio/gamma=1",
        "lemma-3.2-bale/K",
        "eq-insevar-trigub/K_T",
        "thm-4.1-sine/ratio",
    }
    assert all(v > 0 for v in pin["constants"].values())


PIN = {"seed": 1, "corpus_size": 2, "relative_tolerance": 0.05, "reseed_slack": 0.1, "constants": {"c/k": 2.0}}


@pytest.mark.parametrize("value, ok", [(2.09, True), (1.91, True), (2.11, False), (1.8, False)])
def test_regression_on_pinned_corpus(value, ok):
    r = _Context(1, 2, 1, PIN).regression("c", "k", value)
    assert r.passed is ok and r.rhs == 2.0 and r.tolerance == 0.05


@pytest.mark.parametrize("value, ok", [(2.19, True), (0.5, True), (2.21, False)])
def test_regression_on_other_corpus(value, ok):
    r = _Context(5, 2, 1, PIN).regression("c", "k", value)
    assert r.passed is ok


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["no-such-claim"])


def test_report_fields():
    reps = run_suites("eq-f2-dirichlet")
    assert len(reps) == 3 and all(r.passed for r in reps)
    d = reps[0].to_dict()
    assert list(d) == ["claim_id", "case", "lhs", "rhs", "ratio_or_defect", "tolerance", "passed", "runtime_ms"]
    json.dumps(d)
    assert isinstance(d["runtime_ms"], int)


def test_runtime_excluded_from_equality():
    a = VerificationReport("x", "c", 1.0, 1.0, 0.0, 0.1, True, 5)
    assert a == VerificationReport("x", "c", 1.0, 1.0, 0.0, 0.1, True, 99)


def test_workers_do_not_change_results():
    a = run_suites(["lemma-2.1-embedding", "eq-amfunn-rescaled"], corpus_size=4, workers=1)
    b = run_suites(["lemma-2.1-embedding", "eq-amfunn-rescaled"], corpus_size=4, workers=2)
    assert a == b


def test_other_seed_cheap_suites_pass():
    names = ["tchi-l1-ln3", "lemma-2.1-embedding", "norm-exact-values", "eq-near0-fubini", "eq-amfun1-bridge"]
    reps = run_suites(names, seed=7, corpus_size=10)
    assert {r.claim_id for r in reps} == set(names)
    assert all(r.passed for r in reps), [r for r in reps if not r.passed]


def test_default_workers(monkeypatch):
    monkeypatch.setenv("AMALGAM_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.delenv("AMALGAM_WORKERS")
    assert default_workers() >= 1


def test_suite_registry_names():
    assert list(SUITES)[:2] == ["tchi-l1-ln3", "hilbert-divergence"]
    assert "thm-4.1-sine" in SUITES and "eq-insevar-trigub" in SUITES


def test_report_coerces_numpy_scalars():
    r = VerificationReport("x", "c", np.float64(1.0), 2, np.float32(0.5), 1, np.bool_(True), np.int64(3))
    d = r.to_dict()
    assert type(d["passed"]) is bool and type(d["rhs"]) is float and type(d["runtime_ms"]) is int
    json.dumps(d)
