"""Validation harness: comparison records and scenario registry."""

import pytest

from zerocorr.errors import InputError
from zerocorr.validation import SCENARIOS, compare, validation_report


def test_compare_passes_on_agreement():
    rec = compare("x", 1.0, 0.01, 1.01, 0.01)
    assert rec.passed
    assert abs(rec.zscore) < 1.0


def test_compare_fails_on_corrupted_analytic_value():
    # the harness must actually be able to fail: corrupt the analytic side
    rec = compare("corrupt", 1.1, 0.001, 1.0, 0.001)
    assert not rec.passed
    assert abs(rec.zscore) > 3.0


def test_compare_as_dict_round_trip():
    rec = compare("x", 2.0, 0.1, 2.05, 0.1)
    d = rec.as_dict()
    assert d["name"] == "x"
    assert d["passed"] is True
    assert set(d) == {"name", "analytic", "analytic_error", "empirical",
                      "empirical_error", "zscore", "passed"}


def test_unknown_scenario_rejected():
    with pytest.raises(InputError):
        validation_report(["no-such-scenario"])


def test_registry_contents():
    assert {"n1-gaussian", "n1-uniform", "n1-exponential",
            "n2-gaussian-pmf", "n2-uniform-pmf", "n2-exponential-pmf"} == set(SCENARIOS)


def test_n1_gaussian_scenario_runs_and_passes():
    records = validation_report(["n1-gaussian"], samples=50_000, seed=0)
    assert len(records) == 3
    assert all(r.passed for r in records), [r.as_dict() for r in records]


def test_n2_exponential_pmf_scenario():
    records = validation_report(["n2-exponential-pmf"], samples=50_000, seed=1)
    assert {r.name.split("/")[0] for r in records} == {"n2-exponential-pmf"}
    assert all(r.passed for r in records), [r.as_dict() for r in records]
