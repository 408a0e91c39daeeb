"""Однородный потенциал и эндоморфизм Гессе."""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.errors import InvalidInputError
from src.models.subspace import Subspace
from src.models.system import Configuration, MassSystem


@dataclass(frozen=True)
class Potential:
    """U(x) = Σ m_i m_j r_ij^(-kappa)."""

    system: MassSystem
    kappa: float = 1.0

    def __post_init__(self):
        kappa = float(self.kappa)
        if not (math.isfinite(kappa) and kappa > 0):
            raise InvalidInputError(f"kappa должна быть положительной, получено {self.kappa}")
        object.__setattr__(self, "kappa", kappa)

    @property
    def is_newtonian(self) -> bool:
        return self.kappa == 1.0


@dataclass(frozen=True, eq=False)
class HessianOperator:
    """HU_x = M^-1 D²U(x) в канонических координатах."""

    matrix: np.ndarray
    at: Configuration

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        n = self.at.system.size
        if matrix.shape != (n, n):
            raise InvalidInputError(f"Матрица Гессе должна быть {n}x{n}, получено {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def system(self) -> MassSystem:
        return self.at.system

    def apply(self, v: Configuration) -> Configuration:
        return Configuration(self.matrix @ v.coords, self.system)

    def bilinear(self, u: Configuration, v: Configuration) -> float:
        """⟨HU u, v⟩ в массовой метрике."""
        return float(np.dot(self.system.weights, (self.matrix @ u.coords) * v.coords))

    @cached_property
    def symmetric(self) -> np.ndarray:
        """M^(1/2) HU M^(-1/2): симметричное представление в ортонормированных координатах."""
        root = np.sqrt(self.system.weights)
        sym = root[:, None] * self.matrix / root[None, :]
        return 0.5 * (sym + sym.T)

    @cached_property
    def norm(self) -> float:
        """Операторная норма в массовой метрике."""
        return float(np.max(np.abs(np.linalg.eigvalsh(self.symmetric))))

    def restrict(self, subspace: Subspace) -> np.ndarray:
        """Матрица [⟨HU b_i, b_j⟩] на базисе подпространства."""
        phi = subspace.matrix
        return phi.T @ (self.system.weights[:, None] * (self.matrix @ phi))
