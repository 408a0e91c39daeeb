"""Общие фикстуры для тестов."""
import numpy as np
import pytest

from src.config import settings
from src.models.potential import Potential
from src.models.system import MassSystem
from src.services.lagrange import lagrange_configuration, mu_to_masses
from src.services.orbits import homographic_motion


def random_configuration(system: MassSystem, rng, min_distance: float = 0.3):
    """Случайная конфигурация без близких пар тел."""
    while True:
        points = rng.uniform(-1.0, 1.0, size=(system.n_bodies, system.dim))
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1)) + np.eye(system.n_bodies)
        if dist.min() >= min_distance:
            return system.from_points(points)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def equal_system() -> MassSystem:
    return MassSystem((1.0, 1.0, 1.0), dim=2)


@pytest.fixture
def unequal_system() -> MassSystem:
    return MassSystem((1.0, 2.0, 3.0), dim=2)


@pytest.fixture
def newton(equal_system) -> Potential:
    return Potential(equal_system, 1.0)


@pytest.fixture
def lagrange_equal():
    return lagrange_configuration((1.0, 1.0, 1.0))


@pytest.fixture
def lagrange_mu30():
    return lagrange_configuration(mu_to_masses(30.0))


@pytest.fixture
def circular_mu30(lagrange_mu30):
    return homographic_motion(lagrange_mu30, 0.0)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Отчёты с относительным --out пишутся во временную директорию."""
    monkeypatch.setattr(settings, "output_dir", tmp_path)
    return tmp_path
