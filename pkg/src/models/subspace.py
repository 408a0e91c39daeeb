"""Подпространства E^N с ортонормированным в массовой метрике базисом."""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from src.errors import InvalidInputError
from src.models.system import Configuration, MassSystem


class SubspaceLabel(str, Enum):
    """Метки канонических подпространств."""
    DELTA = "Delta"            # полные столкновения, образ δ
    CENTERED = "Centered"      # E^N_0 = Δ^⊥
    K = "K"                    # подобные конфигурации C·x0
    D = "D"                    # деформации (K + Δ)^⊥
    ISOSCELES = "Isosceles"
    COPLANAR = "Coplanar"
    FULL = "Full"
    CUSTOM = "Custom"


@dataclass(frozen=True, eq=False)
class Subspace:
    """Подпространство, заданное массово-ортонормированным базисом."""

    basis: Tuple[Configuration, ...]
    label: SubspaceLabel
    system: MassSystem

    def __post_init__(self):
        basis = tuple(self.basis)
        for b in basis:
            if b.system != self.system:
                raise InvalidInputError("Вектор базиса из другой системы масс")
        object.__setattr__(self, "basis", basis)
        matrix = np.column_stack([b.coords for b in basis]) if basis else np.zeros((self.system.size, 0))
        matrix.setflags(write=False)
        object.__setattr__(self, "_matrix", matrix)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        """Матрица Φ (N·d × k), столбцы — векторы базиса."""
        return self._matrix

    def gram(self) -> np.ndarray:
        phi = self.matrix
        return phi.T @ (self.system.weights[:, None] * phi)

    def gram_deviation(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.max(np.abs(self.gram() - np.eye(self.dim))))

    def coordinates(self, x: Configuration) -> np.ndarray:
        """Координаты ⟨x, b_j⟩ в базисе."""
        return self.matrix.T @ (self.system.weights * x.coords)

    def from_coordinates(self, c: np.ndarray) -> Configuration:
        return Configuration(self.matrix @ np.asarray(c, dtype=float), self.system)

    def projector(self) -> np.ndarray:
        """Матрица массово-ортогонального проектора P = Φ Φ^T M."""
        return self.matrix @ (self.matrix.T * self.system.weights[None, :])

    def __repr__(self) -> str:
        return f"Subspace(label={self.label.value}, dim={self.dim})"
