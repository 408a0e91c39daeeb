"""Система масс и конфигурации в E^N."""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.errors import InvalidInputError, UnsupportedDimensionError


@dataclass(frozen=True)
class MassSystem:
    """Массы N тел и размерность объемлющего пространства E."""

    masses: Tuple[float, ...]
    dim: int = 2

    def __post_init__(self):
        masses = tuple(float(m) for m in self.masses)
        object.__setattr__(self, "masses", masses)
        if len(masses) < 2:
            raise InvalidInputError(f"Нужно хотя бы два тела, получено {len(masses)}")
        if not all(math.isfinite(m) and m > 0 for m in masses):
            raise InvalidInputError(f"Массы должны быть положительны: {masses}")
        if self.dim not in (2, 3):
            raise UnsupportedDimensionError(f"dim E должна быть 2 или 3, получено {self.dim}")

    @property
    def n_bodies(self) -> int:
        return len(self.masses)

    @property
    def size(self) -> int:
        """Размерность E^N (N·d)."""
        return self.n_bodies * self.dim

    @property
    def total_mass(self) -> float:
        return float(sum(self.masses))

    @cached_property
    def mass_array(self) -> np.ndarray:
        arr = np.array(self.masses, dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def weights(self) -> np.ndarray:
        """Диагональ массовой метрики в канонических координатах."""
        arr = np.repeat(self.mass_array, self.dim)
        arr.setflags(write=False)
        return arr

    def configuration(self, coords) -> "Configuration":
        return Configuration(coords, self)

    def zeros(self) -> "Configuration":
        return Configuration(np.zeros(self.size), self)

    def from_points(self, points: Sequence[Sequence[float]]) -> "Configuration":
        arr = np.asarray(points, dtype=float)
        if arr.shape != (self.n_bodies, self.dim):
            raise InvalidInputError(
                f"Ожидались позиции формы ({self.n_bodies}, {self.dim}), получено {arr.shape}"
            )
        return Configuration(arr.reshape(-1), self)

    def from_complex(self, values: Iterable[complex]) -> "Configuration":
        """Плоская конфигурация из N комплексных чисел."""
        if self.dim != 2:
            raise UnsupportedDimensionError("Комплексная запись только для dim E = 2")
        zs = np.asarray(list(values), dtype=complex)
        return self.from_points(np.column_stack([zs.real, zs.imag]))

    def canonical(self, k: int) -> "Configuration":
        """k-й канонический базисный вектор E^N."""
        coords = np.zeros(self.size)
        coords[k] = 1.0
        return Configuration(coords, self)


@dataclass(frozen=True, eq=False)
class Configuration:
    """Точка E^N: плоский массив N·d координат."""

    coords: np.ndarray
    system: MassSystem

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float).reshape(-1)
        if arr.size != self.system.size:
            raise InvalidInputError(
                f"Длина координат {arr.size} не равна N·d = {self.system.size}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def points(self) -> np.ndarray:
        return self.coords.reshape(self.system.n_bodies, self.system.dim)

    def as_complex(self) -> np.ndarray:
        if self.system.dim != 2:
            raise UnsupportedDimensionError("Комплексная запись только для dim E = 2")
        pts = self.points
        return pts[:, 0] + 1j * pts[:, 1]

    def norm(self) -> float:
        """Норма в массовой метрике."""
        return float(math.sqrt(np.dot(self.system.weights, self.coords * self.coords)))

    def with_coords(self, coords) -> "Configuration":
        return Configuration(coords, self.system)

    def _other_coords(self, other: "Configuration") -> np.ndarray:
        if other.system != self.system:
            raise InvalidInputError("Конфигурации относятся к разным системам масс")
        return other.coords

    def __add__(self, other: "Configuration") -> "Configuration":
        return self.with_coords(self.coords + self._other_coords(other))

    def __sub__(self, other: "Configuration") -> "Configuration":
        return self.with_coords(self.coords - self._other_coords(other))

    def __mul__(self, scalar: float) -> "Configuration":
        return self.with_coords(self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Configuration":
        return self.with_coords(self.coords / float(scalar))

    def __neg__(self) -> "Configuration":
        return self.with_coords(-self.coords)

    def __repr__(self) -> str:
        return f"Configuration(masses={self.system.masses}, points={self.points.tolist()})"
