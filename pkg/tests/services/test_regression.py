"""Тесты регрессионной батареи."""
from src.services.regression import REFERENCE_MASSES, run_battery


def test_reference_battery_passes():
    report = run_battery(REFERENCE_MASSES, random_trials=3, seed=7)
    assert report.passed, report.first_failure
    names = {check.name for check in report.checks}
    assert {"matrix_A", "S_distances", "AD_det", "threshold_equivalence"} <= names
    assert len(report.cases) == 2


def test_case_summaries():
    report = run_battery([(1.0, 1.0, 1.0)], random_trials=0)
    case = report.cases[0]
    assert case["mu"] == 3.0
    assert abs(case["AD"]["det"] - 5184.0) < 1e-8
    assert case["strongly_nondegenerate"] is True
    assert report.to_dict()["passed"] is True
