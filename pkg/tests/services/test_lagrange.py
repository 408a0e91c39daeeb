"""Тесты замкнутых формул треугольника Лагранжа."""
import numpy as np
import pytest

from src.errors import InvalidInputError, NotFoundError
from src.models.central import GASCHEAU_MU_THRESHOLD, MassFamily
from src.services.central import gascheau
from src.services.lagrange import (
    D_invariance_check,
    S_distance_formula,
    bisect_det_threshold,
    closed_form_AD,
    closed_form_blocks,
    closed_form_det,
    closed_form_matrix_A,
    closed_form_trace,
    mu_to_masses,
    numeric_blocks,
    numeric_matrix_A,
    orthogonal_triangle_S,
    restricted_AD,
    squared_distances,
)
from src.services.mass_metric import center_of_mass


def _mass_triples(rng, count=5):
    return [(1.0, 1.0, 1.0), (1.0, 2.0, 3.0)] + [tuple(rng.uniform(0.1, 3.0, 3)) for _ in range(count)]


def test_matrix_A_closed_form(rng):
    for masses in _mass_triples(rng):
        expected = closed_form_matrix_A(masses)
        np.testing.assert_allclose(numeric_matrix_A(masses), expected, atol=1e-12 * np.abs(expected).max())
        numeric, closed = numeric_blocks(masses), closed_form_blocks(masses)
        for key in ("B", "C", "D"):
            np.testing.assert_allclose(numeric[key], closed[key], atol=1e-13 * np.abs(closed[key]).max())


def test_orthogonal_triangle(rng):
    for masses in _mass_triples(rng):
        S = orthogonal_triangle_S(masses)
        assert np.linalg.norm(center_of_mass(S)) < 1e-12 * S.norm()
        np.testing.assert_allclose(squared_distances(S), S_distance_formula(masses), rtol=1e-12)
        assert D_invariance_check(masses) < 1e-12


def test_equal_masses_form():
    form = restricted_AD((1.0, 1.0, 1.0))
    assert form.a == pytest.approx(72.0, rel=1e-12)
    assert form.d == pytest.approx(72.0, rel=1e-12)
    assert form.b == pytest.approx(0.0, abs=1e-10)
    assert form.trace == pytest.approx(144.0, rel=1e-12)
    assert form.det == pytest.approx(5184.0, rel=1e-12)


def test_restricted_form_closed_form(rng):
    for masses in _mass_triples(rng, count=98):
        form, closed = restricted_AD(masses), closed_form_AD(masses)
        scale = np.abs(closed.matrix).max()
        np.testing.assert_allclose(form.matrix, closed.matrix, atol=1e-10 * scale)
        assert form.trace == pytest.approx(closed_form_trace(masses), rel=1e-10)
        assert closed.det == pytest.approx(closed_form_det(masses), rel=1e-10, abs=1e-12 * scale ** 2)
        # численный определитель против замкнутой формулы
        assert form.det == pytest.approx(closed_form_det(masses), rel=1e-10, abs=1e-10 * scale ** 2)


def test_det_sign_matches_gascheau(rng):
    for masses in _mass_triples(rng, count=98) + [(1.0, 0.01, 0.01)]:
        assert (closed_form_det(masses) > 0) == gascheau(masses).below_threshold
        assert (restricted_AD(masses).det > 0) == gascheau(masses).below_threshold
        assert closed_form_trace(masses) > 0


@pytest.mark.parametrize("mu", [3.0, 36 / 11, 27 / 8, 27.0, 100.0])
def test_mu_to_masses_inverts_gascheau(mu):
    m = mu_to_masses(mu)
    assert m[0] == 1.0 and m[1] == m[2]
    assert gascheau(m).mu == pytest.approx(mu, rel=1e-12)


def test_mu_to_masses_rejects_small_mu():
    with pytest.raises(InvalidInputError):
        mu_to_masses(2.9)


def test_det_threshold_equal_pair_family():
    result = bisect_det_threshold(MassFamily(), 1e-3, 1.0, 1e-10)
    assert abs(result.mu_star - GASCHEAU_MU_THRESHOLD) < 1e-8
    assert result.parameter_bracket[0] == pytest.approx(0.4, abs=1e-6)
    assert result.criterion == "det"


def test_det_threshold_other_family():
    result = bisect_det_threshold(MassFamily(ratios=(1.0, 2.0)), 1e-3, 1.0, 1e-10)
    assert abs(result.mu_star - GASCHEAU_MU_THRESHOLD) < 1e-8
    assert result.parameter_bracket[0] == pytest.approx((33 - np.sqrt(513)) / 36, abs=1e-6)


def test_det_threshold_without_sign_change():
    with pytest.raises(NotFoundError):
        bisect_det_threshold(MassFamily(), 0.5, 1.0)
    with pytest.raises(InvalidInputError):
        bisect_det_threshold(MassFamily(), 1.0, 0.5)
