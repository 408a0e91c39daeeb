"""Результаты линейного анализа устойчивости."""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple, Union

import numpy as np

from src.models.orbit import HomographicMotion, Trajectory
from src.models.subspace import Subspace, SubspaceLabel
from src.models.system import Configuration

Motion = Union[HomographicMotion, Trajectory]


class FloquetClass(str, Enum):
    """Классы спектра монодромии."""
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    MIXED = "mixed"
    DEGENERATE = "degenerate"


class Verdict(str, Enum):
    """Итог для движения целиком."""
    UNSTABLE = "linearly unstable"
    STABLE = "spectrally stable"
    DEGENERATE = "degenerate: refine"


def _complex_pairs(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in values]


@dataclass(frozen=True, eq=False)
class LinearizedSystem:
    """Уравнение Якоби J'' = B(t) J вдоль движения, ограниченное на блок."""

    motion: Motion
    block: Subspace

    @property
    def phase_dim(self) -> int:
        return 2 * self.block.dim

    @property
    def is_periodic(self) -> bool:
        return isinstance(self.motion, HomographicMotion)


@dataclass(frozen=True, eq=False)
class JacobiField:
    """Решение уравнения Якоби в координатах блока."""

    block: Subspace
    t: np.ndarray
    coords: np.ndarray      # (len(t), k)
    velocities: np.ndarray  # (len(t), k)
    solution: Optional[object] = None

    def norms(self) -> np.ndarray:
        """‖J(t)‖ в массовой метрике (базис блока ортонормирован)."""
        return np.linalg.norm(self.coords, axis=1)

    def configuration(self, k: int) -> Configuration:
        return self.block.from_coordinates(self.coords[k])

    def velocity(self, k: int) -> Configuration:
        return self.block.from_coordinates(self.velocities[k])


@dataclass(frozen=True, eq=False)
class MonodromyReport:
    """Монодромия блока за период, мультипликаторы Флоке и их классификация."""

    label: SubspaceLabel
    period: float
    matrix: np.ndarray
    multipliers: np.ndarray
    classification: FloquetClass
    margins: np.ndarray
    forced: int
    stable_dim: int
    unstable_dim: int
    center_dim: int
    pairing_error: float
    product_error: float

    @property
    def dim(self) -> int:
        return len(self.multipliers)

    @property
    def min_margin(self) -> float:
        """Минимальный | |λ|-1 | по нефорсированным мультипликаторам."""
        free = self.free_margins
        return float(free.min()) if free.size else math.nan

    @property
    def free_margins(self) -> np.ndarray:
        order = np.argsort(np.abs(self.multipliers - 1.0), kind="stable")
        return self.margins[np.sort(order[self.forced:])]

    def to_dict(self) -> dict:
        return {
            "block": self.label.value,
            "period": self.period,
            "multipliers": _complex_pairs(self.multipliers),
            "classification": self.classification.value,
            "margins": [float(m) for m in self.margins],
            "forced": self.forced,
            "min_margin": None if math.isnan(self.min_margin) else self.min_margin,
            "stable_dim": self.stable_dim,
            "unstable_dim": self.unstable_dim,
            "center_dim": self.center_dim,
            "pairing_error": self.pairing_error,
            "product_error": self.product_error,
        }


@dataclass(frozen=True, eq=False)
class MotionClassification:
    """Отчёты по блокам Δ, K, D и общий вердикт."""

    motion: HomographicMotion
    blocks: Dict[str, MonodromyReport]
    verdict: Verdict

    @property
    def essential(self) -> MonodromyReport:
        return self.blocks[SubspaceLabel.D.value]

    @property
    def stable_dim(self) -> int:
        return self.essential.stable_dim

    @property
    def unstable_dim(self) -> int:
        return self.essential.unstable_dim

    def to_dict(self) -> dict:
        return {
            "orbit": self.motion.to_dict(),
            "verdict": self.verdict.value,
            "dim_Es": self.stable_dim,
            "dim_Eu": self.unstable_dim,
            "blocks": {name: report.to_dict() for name, report in self.blocks.items()},
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Проверка ‖J(t)‖ ≥ ‖z(t)‖ для z'' = αz, z(0) = 0."""

    alpha: float
    trials: int
    passed: bool
    min_slack: float
    max_equality_deviation: float
    min_eigenvalue: float


@dataclass(frozen=True)
class ThresholdResult:
    """Найденный переход: скобка по параметру семейства и по mu."""

    criterion: str
    family: str
    parameter_bracket: Tuple[float, float]
    mu_bracket: Tuple[float, float]
    iterations: int
    e: Optional[float] = None
    extra: dict = field(default_factory=dict)

    @property
    def mu_star(self) -> float:
        return 0.5 * (self.mu_bracket[0] + self.mu_bracket[1])

    @property
    def width(self) -> float:
        return abs(self.mu_bracket[1] - self.mu_bracket[0])

    def to_dict(self) -> dict:
        data = {
            "criterion": self.criterion,
            "family": self.family,
            "mu_star": self.mu_star,
            "mu_bracket": list(self.mu_bracket),
            "parameter_bracket": list(self.parameter_bracket),
            "width": self.width,
            "iterations": self.iterations,
        }
        if self.e is not None:
            data["e"] = self.e
        data.update(self.extra)
        return data
