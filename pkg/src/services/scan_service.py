"""Сканирование плоскости параметров (mu, e) для решений Лагранжа."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import settings
from src.models.scan import ScanRow
from src.services.central import gascheau
from src.services.lagrange import lagrange_configuration, mu_to_masses, restricted_AD
from src.services.linstab import monodromy
from src.services.mass_metric import build_subspaces
from src.services.orbits import homographic_motion

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScanCell:
    """Одна клетка сетки: массы, mu, e и допуски."""
    mu: float
    masses: Tuple[float, float, float]
    e: float
    tol: float
    unit_circle_tol: float


def scan_cell(cell: ScanCell) -> ScanRow:
    """Форма A_D и монодромия блока D для одной клетки."""
    form = restricted_AD(cell.masses)
    cc = lagrange_configuration(cell.masses)
    motion = homographic_motion(cc, cell.e)
    _, _, D = build_subspaces(cc.config)
    report = monodromy(motion, D, cell.tol, cell.unit_circle_tol)
    logger.info("Клетка mu = %.6g, e = %.3g: %s", cell.mu, cell.e, report.classification.value)
    return ScanRow(
        mu=cell.mu,
        e=cell.e,
        masses=cell.masses,
        det_AD=form.det,
        trace_AD=form.trace,
        multipliers=np.asarray(report.multipliers),
        classification=report.classification.value,
        min_margin=report.min_margin,
    )


class ScanService:
    """Сетка (mu, e): клетки считаются в пуле процессов, порядок строк — mu, затем e."""

    def __init__(
        self,
        e_values: Sequence[float],
        mu_values: Optional[Sequence[float]] = None,
        masses: Optional[Sequence[Sequence[float]]] = None,
        tol: Optional[float] = None,
        unit_circle_tol: Optional[float] = None,
        jobs: Optional[int] = None,
    ):
        self.e_values = [float(e) for e in e_values]
        self.mu_values = [float(mu) for mu in mu_values] if mu_values else []
        self.masses = [tuple(float(m) for m in triple) for triple in masses] if masses else []
        self.tol = settings.integrator_tol if tol is None else tol
        self.unit_circle_tol = settings.unit_circle_tol if unit_circle_tol is None else unit_circle_tol
        self.jobs = settings.resolved_jobs() if not jobs else jobs

    def _mass_points(self) -> List[Tuple[float, Tuple[float, float, float]]]:
        points = [(mu, mu_to_masses(mu)) for mu in self.mu_values]
        points += [(gascheau(triple).mu, triple) for triple in self.masses]
        return points

    def cells(self) -> List[ScanCell]:
        return [
            ScanCell(mu=mu, masses=masses, e=e, tol=self.tol, unit_circle_tol=self.unit_circle_tol)
            for mu, masses in self._mass_points()
            for e in self.e_values
        ]

    def run(self) -> List[ScanRow]:
        cells = self.cells()
        logger.info("Сканирование: %d клеток, пул %d", len(cells), self.jobs)
        if self.jobs == 1 or len(cells) <= 1:
            return [scan_cell(cell) for cell in cells]
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            return list(executor.map(scan_cell, cells))
