"""Центральные конфигурации и параметры треугольника Лагранжа."""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.errors import InvalidInputError
from src.models.potential import Potential
from src.models.system import Configuration, MassSystem

# Порог det A_D > 0 в терминах двух эквивалентных параметров
GASCHEAU_MU_THRESHOLD = 27.0 / 8.0
LAMBDA_RATIO_THRESHOLD = 8.0 / 11.0
# Устойчивость круговой орбиты Лагранжа при mu > 27
ROUTH_MU_THRESHOLD = 27.0


@dataclass(frozen=True, eq=False)
class CentralConfiguration:
    """Центральная конфигурация с λ и спектральными данными на D."""

    config: Configuration
    potential: Potential
    lam: float
    residual_norm: float
    spectrum_D: Tuple[float, ...]
    strongly_nondegenerate: bool
    strong_minimizer: bool
    potential_value: float
    iterations: int = 0

    @property
    def system(self) -> MassSystem:
        return self.config.system

    @property
    def kappa(self) -> float:
        return self.potential.kappa

    @property
    def is_normalized(self) -> bool:
        return abs(self.config.norm() - 1.0) <= 1e-10

    def to_dict(self) -> dict:
        """Преобразует в словарь для JSON."""
        return {
            "masses": list(self.system.masses),
            "kappa": self.kappa,
            "positions": self.config.points.tolist(),
            "lambda": self.lam,
            "residual_norm": self.residual_norm,
            "potential": self.potential_value,
            "spectrum_D": list(self.spectrum_D),
            "strongly_nondegenerate": self.strongly_nondegenerate,
            "strong_minimizer": self.strong_minimizer,
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class GascheauParams:
    """Константа Гаскё mu и отношение lambda = Σ m_i m_j / Σ m_i²."""

    mu: float
    lambda_ratio: float

    @property
    def below_threshold(self) -> bool:
        """mu < 27/8."""
        return self.mu < GASCHEAU_MU_THRESHOLD

    @property
    def det_positive(self) -> bool:
        """lambda > 8/11, что равносильно det A_D > 0."""
        return self.lambda_ratio > LAMBDA_RATIO_THRESHOLD

    @property
    def routh_stable(self) -> bool:
        return self.mu > ROUTH_MU_THRESHOLD

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "lambda_ratio": self.lambda_ratio,
            "mu_below_27_8": self.below_threshold,
            "lambda_above_8_11": self.det_positive,
        }


@dataclass(frozen=True)
class RestrictedForm:
    """Матрица [[a, b], [c, d]] формы ⟨A u, v⟩ на базисе {η, ζ} пространства D."""

    a: float
    b: float
    c: float
    d: float

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def positive_definite(self) -> bool:
        return self.det > 0 and self.trace > 0

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "trace": self.trace,
            "det": self.det,
        }


@dataclass(frozen=True)
class MassFamily:
    """Однопараметрическое семейство масс (1, r2·m, r3·m)."""

    ratios: Tuple[float, float] = (1.0, 1.0)
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        ratios = tuple(float(r) for r in self.ratios)
        if len(ratios) != 2 or not all(r > 0 for r in ratios):
            raise InvalidInputError(f"Коэффициенты семейства должны быть положительны: {self.ratios}")
        object.__setattr__(self, "ratios", ratios)

    def masses(self, m: float) -> Tuple[float, float, float]:
        return (1.0, self.ratios[0] * m, self.ratios[1] * m)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        parts = ["1"] + [("m" if r == 1.0 else f"{r:g}m") for r in self.ratios]
        return ",".join(parts)
