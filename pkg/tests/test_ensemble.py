import csv
import io
import json

import numpy as np
import pytest

from sumprod import harness
from sumprod.ensemble import (CHECKERS, CSV_COLUMNS, GENERATORS, EnsembleSpec,
                              IncompatibleError, check_compatible, generate_coset_union,
                              generate_set, results_to_csv, results_to_jsonl, run_ensemble,
                              summary_to_jsonl, trial_inputs, trial_seed)
from sumprod.harness import is_invariant, is_subgroup
from sumprod.prime_field import multiplicative_order


def test_trial_seed_deterministic_and_distinct():
    assert trial_seed(1, 2, 3) == trial_seed(1, 2, 3)
    seeds = {trial_seed(7, c, t) for c in range(10) for t in range(10)}
    assert len(seeds) == 100


@pytest.mark.parametrize("kind", GENERATORS)
def test_generators_sizes(kind):
    rng = np.random.default_rng(0)
    size = 12 if kind != "subgroup_union_cosets" else 36
    A = generate_set(kind, 1009, size, rng, zero_free=True)
    assert len(A) == size
    assert 0 not in A


def test_generate_examples():
    rng = np.random.default_rng(0)
    assert generate_set("subgroup", 7, 3, rng).elements == (1, 2, 4)
    A = generate_set("arithmetic_progression", 101, 5, rng, start=0, step=1)
    assert A.elements == (0, 1, 2, 3, 4)
    G = generate_set("geometric_progression", 101, 10, rng, start=3, ratio=2)
    assert set(G) == {3 * 2**i % 101 for i in range(10)}


def test_generate_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        generate_set("subgroup", 7, 4, rng)
    with pytest.raises(ValueError):
        generate_set("random", 7, 8, rng)
    with pytest.raises(ValueError):
        generate_set("random", 7, 7, rng, zero_free=True)
    with pytest.raises(ValueError):
        generate_set("nope", 7, 2, rng)
    with pytest.raises(ValueError):
        generate_set("geometric_progression", 7, 5, rng, ratio=2)


def test_floor_subgroup_size():
    # 20 does not divide 2002; the largest divisor below it is 14
    A = generate_set("subgroup", 2003, 20, np.random.default_rng(0), exact_size=False)
    assert len(A) == 14
    assert is_subgroup(A)


def test_gp_ratio_has_enough_order():
    rng = np.random.default_rng(5)
    for _ in range(20):
        A = generate_set("geometric_progression", 2003, 60, rng)
        assert len(A) == 60


def test_coset_union():
    rng = np.random.default_rng(3)
    G, Q = generate_coset_union(1009, 36, rng)
    assert len(G) == 12 and len(Q) == 36
    assert is_subgroup(G) and is_invariant(Q, G)
    with pytest.raises(ValueError):
        generate_coset_union(1009, 35, rng)


def test_same_seed_same_set():
    a = generate_set("random", 2003, 40, np.random.default_rng(99))
    b = generate_set("random", 2003, 40, np.random.default_rng(99))
    assert a == b


def test_compatibility():
    check_compatible("sumprod", "random")
    with pytest.raises(IncompatibleError):
        check_compatible("hole", "random")
    with pytest.raises(IncompatibleError):
        check_compatible("subgroup_energy", "random")
    with pytest.raises(ValueError):
        check_compatible("nope", "random")
    spec = EnsembleSpec((101,), ("random",), (5,), 1, 0)
    with pytest.raises(IncompatibleError):
        run_ensemble(spec, "expsum_single")


def test_single_trial_matches_direct_call():
    spec = EnsembleSpec((101,), ("random",), (8,), 1, 42)
    report = run_ensemble(spec, "sumprod")
    (res,) = report.results
    args, kwargs = trial_inputs("sumprod", 101, "random", 8, trial_seed(42, 0, 0))
    direct = harness.check_sumprod(*args, **kwargs)
    assert res.claims == direct.claims
    assert res.flags == direct.flags
    assert res.seed == trial_seed(42, 0, 0)


@pytest.mark.parametrize("checker_id", sorted(CHECKERS))
def test_every_checker_runs(checker_id):
    arity = CHECKERS[checker_id].arity
    if arity == "range":
        gen, size = "geometric_progression", 10
    elif arity == "subgroup":
        gen, size = "subgroup_union_cosets", 36
    else:
        gen, size = "random", 4
    spec = EnsembleSpec((1009,), (gen,), (size,), 2, 1)
    report = run_ensemble(spec, checker_id)
    assert len(report.results) == 2
    assert report.exact_violations == 0
    assert not report.failed
    assert {s["checker_id"] for s in report.summary} == {checker_id}


def test_katz_koester_ensemble():
    spec = EnsembleSpec((101,), ("random",), (8,), 100, 7)
    report = run_ensemble(spec, "katz_koester")
    assert report.exact_violations == 0
    rows = list(csv.reader(io.StringIO(results_to_csv(report.results))))
    primary = [r for r in rows[1:] if r[1] == "katz_koester"]
    assert len(primary) == 100


def test_determinism_and_workers():
    spec = EnsembleSpec((2003,), ("random", "arithmetic_progression"), (20, 30), 3, 11)
    a = results_to_csv(run_ensemble(spec, "sumprod").results)
    b = results_to_csv(run_ensemble(spec, "sumprod").results)
    c = results_to_csv(run_ensemble(spec, "sumprod", workers=2).results)
    assert a == b == c


def test_constants():
    spec = EnsembleSpec((2003,), ("random",), (20,), 2, 11)
    ok = run_ensemble(spec, "sumprod", constants={"sumprod": 1e-9})
    assert not ok.failed
    bad = run_ensemble(spec, "sumprod", constants={"sumprod.SP_plus": 1e12})
    assert bad.constant_violations == 2 and bad.failed


def test_csv_and_jsonl_shape():
    spec = EnsembleSpec((2003,), ("random",), (20,), 2, 11)
    results = run_ensemble(spec, "sumprod").results
    rows = list(csv.DictReader(io.StringIO(results_to_csv(results))))
    assert list(rows[0])[:len(CSV_COLUMNS)] == CSV_COLUMNS
    assert rows[0]["flag_size_lt_p5_8"] == "1"
    assert len(rows) == 2 * len(results[0].claims)
    lines = results_to_jsonl(results).splitlines()
    assert json.loads(lines[0])["checker_id"] == "sumprod"
    for row in rows:
        assert float(row["ratio"]) == float(row["lhs"]) / float(row["rhs"])


def test_summary():
    spec = EnsembleSpec((2003,), ("random",), (20, 40), 4, 3)
    report = run_ensemble(spec, "sumprod")
    summary = report.summary
    s = next(x for x in summary if x["claim"] == "sumprod_plus" and x["sizes"] == ["40"])
    assert s["trials"] == 4
    assert s["min_ratio"] <= s["median_ratio"] <= s["max_ratio"]
    assert s["observed_constant"] == s["min_ratio"]
    for line in summary_to_jsonl(summary).splitlines():
        json.loads(line)
