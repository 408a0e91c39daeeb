"""Строка сканирования по (mu, e)."""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

CSV_COLUMNS: List[str] = (
    ["mu", "e", "m1", "m2", "m3", "detAD", "trAD"]
    + [f"mult_re_{k}" for k in range(1, 5)]
    + [f"mult_im_{k}" for k in range(1, 5)]
    + ["class", "min_margin"]
)


@dataclass(frozen=True, eq=False)
class ScanRow:
    """Результат для одной клетки сетки: форма A_D и монодромия блока D."""

    mu: float
    e: float
    masses: Tuple[float, float, float]
    det_AD: float
    trace_AD: float
    multipliers: np.ndarray
    classification: str
    min_margin: float

    @property
    def det_AD_sign(self) -> int:
        return int(np.sign(self.det_AD))

    def values(self) -> list:
        """Значения в порядке CSV_COLUMNS."""
        mults = list(self.multipliers)
        return (
            [self.mu, self.e, *self.masses, self.det_AD, self.trace_AD]
            + [float(z.real) for z in mults]
            + [float(z.imag) for z in mults]
            + [self.classification, self.min_margin]
        )

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "e": self.e,
            "masses": list(self.masses),
            "det_AD": self.det_AD,
            "det_AD_sign": self.det_AD_sign,
            "trace_AD": self.trace_AD,
            "multipliers": [[float(z.real), float(z.imag)] for z in self.multipliers],
            "class": self.classification,
            "min_margin": self.min_margin,
        }
