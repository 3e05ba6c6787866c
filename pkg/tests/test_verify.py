"""Tests for the verification suites."""

import pytest

from coherence_power.verify import SUITES, CheckResult, run_suites
from tests.conftest import FAST_SEARCH, SEED

QUICK_SUITES = ["hadamard", "cnot"]


# ==================== CheckResult ====================


class TestCheckResult:
    """Tests for report lines and pass/fail status."""

    def test_pass_line(self):
        result = CheckResult("unitary C=D gap", 3.2e-9, 1e-7)
        assert result.passed
        assert result.line() == (
            "unitary C=D gap: max deviation 3.2e-09 (tol 1e-07) PASS"
        )

    def test_fail_line(self):
        result = CheckResult("convexity", 0.25, 1e-9)
        assert not result.passed
        assert result.line().endswith("(tol 1e-09) FAIL")

    def test_informational_always_passes(self):
        """Informational checks report their deviation without a verdict."""
        result = CheckResult("two-branch", 0.5, 1e-7, informational=True)
        assert result.passed
        assert result.line() == "two-branch: max deviation 0.5 INFO"


# ==================== Suites ====================


@pytest.mark.parametrize("name", QUICK_SUITES)
def test_quick_suites_pass(name):
    results = run_suites([name], SEED, FAST_SEARCH)
    assert results
    failed = [r.line() for r in results if not r.passed]
    assert not failed


def test_cnot_reports_xz_as_information():
    """The xz basis value is reported, not asserted."""
    results = run_suites(["cnot"], SEED, FAST_SEARCH)
    info = [r for r in results if r.informational]
    assert [r.name for r in info] == ["cnot cohering power xz minus 1"]


def test_run_suites_is_deterministic():
    """The same seed gives identical results."""
    first = run_suites(["unitary"], SEED, FAST_SEARCH)
    second = run_suites(["unitary"], SEED, FAST_SEARCH)
    assert first == second


def test_suite_independent_of_selection():
    """A suite gives the same lines alone or after another suite."""
    alone = run_suites(["cnot"], SEED, FAST_SEARCH)
    together = run_suites(["hadamard", "cnot"], SEED, FAST_SEARCH)
    assert together[-len(alone) :] == alone


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["nonexistent"], SEED)


def test_logs_each_suite(caplog):
    caplog.set_level("INFO")
    run_suites(["cnot"], 7)
    assert "Running suite cnot (seed 7)" in caplog.text


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(set(SUITES) - set(QUICK_SUITES)))
def test_full_suites_pass(name):
    """Certification-scale runs with the default search grids."""
    results = run_suites([name], SEED)
    failed = [r.line() for r in results if not r.passed]
    assert not failed
