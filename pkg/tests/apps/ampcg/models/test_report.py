# tests/apps/ampcg/models/test_report.py
import pytest

from apps.ampcg.models.report import CheckResult, QueryStats, VerificationReport


def test_failed_check_needs_a_witness():
    with pytest.raises(ValueError):
        CheckResult(name="C1[A]", passed=False)


def test_report_rendering():
    report = VerificationReport()
    report.add("C1[A]", True)
    report.add("C2[B]", False, "{B} ⊥ {C} | {}")
    assert not report.passed
    assert [c.name for c in report.failures()] == ["C2[B]"]
    assert report.render() == "CHECK C1[A] PASS\nCHECK C2[B] FAIL [witness: {B} ⊥ {C} | {}]"


def test_extend_prefixes_names():
    inner = VerificationReport()
    inner.add("markov", True)
    outer = VerificationReport()
    outer.extend(inner, prefix="g1.")
    assert outer.checks[0].name == "g1.markov"
    assert VerificationReport().passed


def test_query_stats_total_matches_sizes():
    stats = QueryStats()
    for size in (0, 0, 1, 2):
        stats.record(size)
    assert stats.total == 4
    assert stats.by_size == {0: 2, 1: 1, 2: 1}
