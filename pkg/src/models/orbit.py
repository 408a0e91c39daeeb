"""Кеплеровы орбиты, гомографические движения и траектории."""
import math
from dataclasses import dataclass
from typing import Any, Optional, Tuple

import numpy as np

from src.errors import InvalidInputError, UnsupportedOrbitError
from src.models.central import CentralConfiguration
from src.models.potential import Potential
from src.models.system import Configuration, MassSystem


@dataclass(frozen=True)
class KeplerOrbit:
    """Эллиптическое решение z'' = -λ' z |z|^-3, перицентр при t = 0 на оси Re."""

    gravitational_parameter: float
    eccentricity: float
    semi_major_axis: float = 1.0

    def __post_init__(self):
        gm = float(self.gravitational_parameter)
        e = float(self.eccentricity)
        a = float(self.semi_major_axis)
        if not (math.isfinite(gm) and gm > 0):
            raise InvalidInputError(f"λ' должен быть положительным, получено {gm}")
        if not (math.isfinite(e) and 0.0 <= e < 1.0):
            raise UnsupportedOrbitError(f"Рассматриваются только эллиптические орбиты, e = {e}")
        if not (math.isfinite(a) and a > 0):
            raise InvalidInputError(f"Большая полуось должна быть положительной, a = {a}")
        object.__setattr__(self, "gravitational_parameter", gm)
        object.__setattr__(self, "eccentricity", e)
        object.__setattr__(self, "semi_major_axis", a)

    @property
    def period(self) -> float:
        return 2.0 * math.pi * self.semi_major_axis ** 1.5 / math.sqrt(self.gravitational_parameter)

    @property
    def mean_motion(self) -> float:
        return 2.0 * math.pi / self.period

    @property
    def perihelion(self) -> float:
        return self.semi_major_axis * (1.0 - self.eccentricity)

    @property
    def aphelion(self) -> float:
        """k = max |z(t)|."""
        return self.semi_major_axis * (1.0 + self.eccentricity)

    @property
    def energy(self) -> float:
        return -self.gravitational_parameter / (2.0 * self.semi_major_axis)

    @property
    def angular_momentum(self) -> float:
        return math.sqrt(self.gravitational_parameter * self.semi_major_axis * (1.0 - self.eccentricity ** 2))


@dataclass(frozen=True, eq=False)
class HomographicMotion:
    """x(t) = z(t)·x0 через нормированную центральную конфигурацию."""

    cc: CentralConfiguration
    orbit: KeplerOrbit

    def __post_init__(self):
        if not self.cc.is_normalized:
            raise InvalidInputError("Гомографическое движение строится по конфигурации с ‖x0‖ = 1")
        if self.cc.system.dim != 2:
            raise InvalidInputError("Гомографическое движение определено для плоских конфигураций")

    @property
    def x0(self) -> Configuration:
        return self.cc.config

    @property
    def system(self) -> MassSystem:
        return self.cc.system

    @property
    def potential(self) -> Potential:
        return self.cc.potential

    @property
    def period(self) -> float:
        return self.orbit.period

    def to_dict(self) -> dict:
        return {
            "e": self.orbit.eccentricity,
            "a": self.orbit.semi_major_axis,
            "gravitational_parameter": self.orbit.gravitational_parameter,
            "period": self.period,
        }


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Численное решение x'' = ∇U(x): узлы по времени и плотный вывод."""

    potential: Potential
    t: np.ndarray
    states: np.ndarray  # (len(t), 2·N·d): координаты, затем скорости
    solution: Optional[Any] = None

    @property
    def system(self) -> MassSystem:
        return self.potential.system

    @property
    def t_final(self) -> float:
        return float(self.t[-1])

    def _split(self, state: np.ndarray) -> Tuple[Configuration, Configuration]:
        n = self.system.size
        return Configuration(state[:n], self.system), Configuration(state[n:], self.system)

    def sample(self, k: int) -> Tuple[Configuration, Configuration]:
        return self._split(self.states[k])

    def state_at(self, t: float) -> Tuple[Configuration, Configuration]:
        if self.solution is None:
            raise InvalidInputError("Траектория без плотного вывода")
        return self._split(np.asarray(self.solution(t)).reshape(-1))

    def positions_at(self, t: float) -> Configuration:
        return self.state_at(t)[0]
