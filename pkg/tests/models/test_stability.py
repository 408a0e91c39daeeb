"""Тесты моделей результатов устойчивости."""
import math

import numpy as np

from src.models.central import GascheauParams, MassFamily, RestrictedForm
from src.models.scan import CSV_COLUMNS, ScanRow
from src.models.stability import FloquetClass, MonodromyReport, ThresholdResult
from src.models.subspace import SubspaceLabel


def _report(multipliers, forced):
    values = np.asarray(multipliers, dtype=complex)
    return MonodromyReport(
        label=SubspaceLabel.D,
        period=1.0,
        matrix=np.eye(len(values)),
        multipliers=values,
        classification=FloquetClass.HYPERBOLIC,
        margins=np.abs(np.abs(values) - 1.0),
        forced=forced,
        stable_dim=1,
        unstable_dim=1,
        center_dim=2,
        pairing_error=0.0,
        product_error=0.0,
    )


def test_min_margin_skips_forced_multipliers():
    report = _report([1.0, 1.0, 2.0, 0.5], forced=2)
    assert report.min_margin == 0.5
    assert sorted(report.free_margins.tolist()) == [0.5, 1.0]


def test_min_margin_nan_without_free_multipliers():
    report = _report([1.0, 1.0], forced=2)
    assert math.isnan(report.min_margin)
    assert report.to_dict()["min_margin"] is None


def test_restricted_form_invariants():
    form = RestrictedForm(a=72.0, b=0.0, c=0.0, d=72.0)
    assert form.trace == 144.0
    assert form.det == 5184.0
    assert form.positive_definite
    assert not RestrictedForm(a=1.0, b=2.0, c=2.0, d=1.0).positive_definite


def test_gascheau_flags():
    params = GascheauParams(mu=3.0, lambda_ratio=1.0)
    assert params.below_threshold and params.det_positive and not params.routh_stable
    assert GascheauParams(mu=30.0, lambda_ratio=0.1).routh_stable


def test_mass_family_names():
    assert MassFamily().name == "1,m,m"
    assert MassFamily(ratios=(1.0, 2.0)).name == "1,m,2m"
    assert MassFamily(ratios=(1.0, 2.0)).masses(0.5) == (1.0, 0.5, 1.0)


def test_threshold_result_midpoint():
    result = ThresholdResult("det", "1,m,m", (0.39, 0.41), (3.37, 3.38), 10)
    assert abs(result.mu_star - 3.375) < 1e-12
    assert abs(result.width - 0.01) < 1e-12
    assert "e" not in result.to_dict()


def test_scan_row_matches_columns():
    row = ScanRow(
        mu=30.0, e=0.0, masses=(1.0, 0.03, 0.03), det_AD=-1.0, trace_AD=2.0,
        multipliers=np.array([1j, -1j, 0.5 + 0.5j, 0.5 - 0.5j]),
        classification="elliptic", min_margin=1e-9,
    )
    assert len(row.values()) == len(CSV_COLUMNS)
    assert row.det_AD_sign == -1
    assert row.to_dict()["class"] == "elliptic"
