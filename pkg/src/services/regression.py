"""Регрессионная батарея замкнутых формул для треугольника Лагранжа."""
import logging
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.models.regression import RegressionCheck, RegressionReport
from src.services.central import gascheau
from src.services.configurations import equilateral
from src.services.lagrange import (
    D_invariance_check,
    S_distance_formula,
    closed_form_AD,
    closed_form_blocks,
    closed_form_det,
    closed_form_matrix_A,
    closed_form_trace,
    lagrange_configuration,
    numeric_blocks,
    numeric_matrix_A,
    orthogonal_triangle_S,
    planar_system,
    restricted_AD,
    squared_distances,
)
from src.services.mass_metric import center_of_mass, complex_mass_inner

logger = logging.getLogger(__name__)

REFERENCE_MASSES: Tuple[Tuple[float, float, float], ...] = ((1.0, 1.0, 1.0), (1.0, 2.0, 3.0))
RANDOM_TRIALS = 20


def _relative(actual: np.ndarray, expected: np.ndarray) -> float:
    actual, expected = np.asarray(actual, dtype=float), np.asarray(expected, dtype=float)
    scale = max(float(np.max(np.abs(expected))), np.finfo(float).tiny)
    return float(np.max(np.abs(actual - expected))) / scale


def _checks_for(masses: Tuple[float, float, float]) -> Iterable[RegressionCheck]:
    yield RegressionCheck("matrix_A", masses, _relative(numeric_matrix_A(masses), closed_form_matrix_A(masses)), 1e-12)

    numeric, closed = numeric_blocks(masses), closed_form_blocks(masses)
    yield RegressionCheck(
        "blocks_BCD", masses, max(_relative(numeric[k], closed[k]) for k in ("B", "C", "D")), 1e-12
    )

    system = planar_system(masses)
    S = orthogonal_triangle_S(masses)
    T = equilateral(system, center=False)
    ones = system.from_complex([1.0, 1.0, 1.0])
    s_scale = S.norm()
    yield RegressionCheck("S_centered", masses, float(np.linalg.norm(center_of_mass(S))) / s_scale, 1e-12)
    yield RegressionCheck(
        "S_orthogonal",
        masses,
        max(abs(complex_mass_inner(S, T)) / (s_scale * T.norm()),
            abs(complex_mass_inner(S, ones)) / (s_scale * ones.norm())),
        1e-12,
    )
    yield RegressionCheck("S_distances", masses, _relative(squared_distances(S), S_distance_formula(masses)), 1e-12)
    yield RegressionCheck("D_invariance", masses, D_invariance_check(masses), 1e-12)

    form, closed_form = restricted_AD(masses), closed_form_AD(masses)
    yield RegressionCheck("AD_entries", masses, _relative(form.matrix, closed_form.matrix), 1e-10)
    yield RegressionCheck("AD_trace", masses, _relative(form.trace, closed_form_trace(masses)), 1e-10)
    m1, m2, m3 = masses
    pairs = m1 * m2 + m2 * m3 + m1 * m3
    det_scale = (m1 * m2 * m3 * pairs) ** 2 * (512 * (m1 ** 2 + m2 ** 2 + m3 ** 2) + 704 * pairs)
    yield RegressionCheck("AD_det", masses, abs(form.det - closed_form_det(masses)) / det_scale, 1e-10)

    params = gascheau(masses)
    agree = params.below_threshold == params.det_positive == (closed_form_det(masses) > 0)
    yield RegressionCheck("threshold_equivalence", masses, 0.0 if agree else 1.0, 0.0)


def _case_summary(masses: Tuple[float, float, float]) -> dict:
    form = restricted_AD(masses)
    params = gascheau(masses)
    cc = lagrange_configuration(masses)
    return {
        "masses": list(masses),
        **params.to_dict(),
        "AD": form.to_dict(),
        "strongly_nondegenerate": cc.strongly_nondegenerate,
        "strong_minimizer": cc.strong_minimizer,
    }


def run_battery(
    masses_list: Sequence[Sequence[float]] = REFERENCE_MASSES,
    random_trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> RegressionReport:
    """Все тождества для контрольных и случайных троек масс."""
    report = RegressionReport()
    rng = np.random.default_rng(seed)
    triples = [tuple(float(m) for m in masses) for masses in masses_list]
    triples += [tuple(float(m) for m in rng.uniform(0.05, 5.0, size=3)) for _ in range(random_trials)]
    for masses in triples:
        report.checks.extend(_checks_for(masses))
    report.cases = [_case_summary(tuple(float(m) for m in masses)) for masses in masses_list]
    failure = report.first_failure
    if failure is None:
        logger.info("Регрессия: %d проверок пройдено", len(report.checks))
    else:
        logger.error("Регрессия: '%s' не прошла для масс %s (%.3e)", failure.name, failure.masses, failure.deviation)
    return report
