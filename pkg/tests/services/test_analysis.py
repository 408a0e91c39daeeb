"""Тесты полного отчёта по конфигурации."""
import pytest

from src.models.system import MassSystem
from src.services.analysis import analyze_configuration, analyze_positions
from src.services.configurations import collinear, equilateral, isosceles_triangle, named
from src.services.lagrange import mu_to_masses


def test_collinear_report():
    report = analyze_positions([1, 1, 1], [[-1, 0], [0, 0], [1, 0]])
    assert report["lambda"] == pytest.approx(-1.25)
    assert report["central_residual"] < 1e-14
    assert report["gascheau"]["mu"] == 3.0
    assert set(report["spectra"]) == {"Delta", "K", "D"}
    assert report["strongly_nondegenerate"] is False


def test_non_central_seed_is_refined():
    report = analyze_positions([1, 2, 3], [[1.0, 0.1], [-0.4, 0.9], [-0.5, -0.8]])
    assert report["central_residual"] > 1e-6
    assert report["refined"]["iterations"] > 0


def test_refinement_can_be_disabled():
    report = analyze_positions([1, 2, 3], [[1.0, 0.1], [-0.4, 0.9], [-0.5, -0.8]], refine=False)
    assert "spectra" not in report


def test_orbit_classification():
    system = MassSystem(mu_to_masses(30.0), dim=2)
    report = analyze_configuration(system, equilateral(system), orbit=(0.0, 1.0))
    assert report["motion"]["verdict"] == "spectrally stable"
    assert report["strong_minimizer"] is False


def test_spatial_configuration_stops_after_potential():
    system = MassSystem((1.0, 1.0, 2.0), dim=3)
    report = analyze_configuration(system, isosceles_triangle(system), kappa=2.0)
    assert report["dim"] == 3
    assert report["kappa"] == 2.0
    assert "spectra" not in report


def test_named_configurations(equal_system):
    assert named(equal_system, "collinear").coords.tolist() == collinear(equal_system).coords.tolist()
    assert named(equal_system, "isosceles", 2.0).points[2, 1] == pytest.approx(2.0 - 2.0 / 3.0)
