from fractions import Fraction

import pytest

from roughprob import DomainTooLarge, UnknownLaw
from roughprob.laws import COVER_VARIANT
from roughprob.verifier import (
    SuiteConfig,
    enumerate_maps,
    enumerate_spaces,
    random_measure,
    run_suite,
    set_partitions,
)

import random

SMALL_LAWS = ("P2.1.3", "L2.6.8", "T2.20", "L2.6.10", "NEG-SUPERADD")


@pytest.mark.parametrize("n, count", [(1, 1), (2, 9), (3, 343)])
def test_map_counts(n, count):
    assert sum(1 for _ in enumerate_maps(n)) == count
    assert sum(1 for _ in enumerate_spaces(n)) == count
    assert sum(1 for _ in enumerate_spaces(n, seeds=(1, 2))) == 3 * count


def test_spaces_are_valid_and_deterministic():
    first = [s.to_mapping() for s in enumerate_spaces(2, seeds=(7,))]
    second = [s.to_mapping() for s in enumerate_spaces(2, seeds=(7,))]
    assert first == second
    for s in enumerate_spaces(2, seeds=(7,)):
        assert sum(s.weights) == 1 and all(w >= 0 for w in s.weights)


def test_random_measure_normalised():
    for seed in range(20):
        w = random_measure(4, random.Random(seed))
        assert len(w) == 4 and sum(w) == 1 and all(isinstance(x, Fraction) and x >= 0 for x in w)


@pytest.mark.parametrize("k, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_partition_counts(k, bell):
    parts = list(set_partitions((1 << k) - 1))
    assert len(parts) == bell
    assert len(set(parts)) == bell
    for blocks in parts:
        union = 0
        for b in blocks:
            assert b and not b & union
            union |= b
        assert union == (1 << k) - 1


def test_limits():
    with pytest.raises(DomainTooLarge):
        list(enumerate_spaces(4))
    with pytest.raises(DomainTooLarge):
        run_suite(SuiteConfig(n_max=9))
    with pytest.raises(DomainTooLarge):
        run_suite(SuiteConfig(n_max=5))
    with pytest.raises(DomainTooLarge):
        run_suite(SuiteConfig(n_max=7, sample=3))
    with pytest.raises(UnknownLaw):
        run_suite(SuiteConfig(laws=("XYZ",)))


def test_allow_large_raises_limit():
    assert next(iter(enumerate_spaces(4, allow_large=True))).n == 4


def test_empty_law_list():
    assert run_suite(SuiteConfig(laws=())) == []


def _dicts(reports):
    return [r.to_dict() for r in reports]


def test_small_sweep():
    reports = run_suite(SuiteConfig(n_max=2, laws=SMALL_LAWS))
    status = {r.law: r.status for r in reports}
    assert status == {"P2.1.3": "pass", "L2.6.8": "pass", "T2.20": "pass",
                      "L2.6.10": "fail", "NEG-SUPERADD": "fired"}
    for r in reports:
        assert r.exercised > 0
        assert len(r.counterexamples) <= 3


def test_deterministic_and_worker_independent():
    config = SuiteConfig(n_max=2, laws=SMALL_LAWS)
    serial = _dicts(run_suite(config))
    assert serial == _dicts(run_suite(config))
    assert serial == _dicts(run_suite(SuiteConfig(n_max=2, laws=SMALL_LAWS, workers=2)))


def test_counterexample_shape():
    (report,) = run_suite(SuiteConfig(n_max=2, laws=("L2.6.10",), max_counterexamples=1))
    (ce,) = report.counterexamples
    assert set(ce) == {"space_id", "space", "inputs", "lhs", "rhs"}
    assert set(ce["inputs"]) == {"A", "B"}
    assert set(ce["space"]) == {"elements", "map", "weights"}


def test_cover_variant_role():
    as_control = run_suite(SuiteConfig(n_max=1, laws=(COVER_VARIANT,)))
    as_law = run_suite(SuiteConfig(n_max=1, laws=(COVER_VARIANT,), include_cover_variant=True))
    assert (as_control[0].role, as_control[0].status) == ("control", "fired")
    assert (as_law[0].role, as_law[0].status) == ("law", "fail")
    ce = as_law[0].counterexamples[0]
    assert ce["inputs"]["cover"] == [["a"], ["a"]]


def test_sampling_mode():
    config = SuiteConfig(n_max=5, sample=2, laws=("P2.1.4", "L2.6.9", "T2.19"), sample_inputs=8)
    reports = run_suite(config)
    assert all(r.status == "pass" for r in reports)
    assert _dicts(reports) == _dicts(run_suite(config))


@pytest.mark.slow
def test_every_law_exercised_at_n3():
    reports = run_suite(SuiteConfig(n_max=3, seeds=(1,), variables_per_space=1))
    for r in reports:
        assert r.exercised > 0, r.law
        if r.role == "control":
            assert r.status == "fired"
        elif r.law != "L2.6.10":
            assert r.status == "pass", r.law
