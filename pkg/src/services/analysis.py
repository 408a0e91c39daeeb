"""Полный отчёт по одной конфигурации: невязка, спектры блоков, флаги, монодромия."""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from src.models.potential import Potential
from src.models.system import Configuration, MassSystem
from src.services.central import (
    central_configuration,
    central_residual,
    find_central,
    gascheau,
    sphere_hessian_spectrum,
)
from src.services.linstab import classify_motion
from src.services.mass_metric import build_subspaces, centered, normalized
from src.services.orbits import homographic_motion
from src.services.potential import hessian, value

logger = logging.getLogger(__name__)

CENTRAL_TOL = 1e-10


def _block_spectra(U: Potential, x: Configuration) -> dict:
    H = hessian(U, x)
    return {V.label.value: np.linalg.eigvalsh(H.restrict(V)).tolist() for V in build_subspaces(x) if V.dim}


def analyze_configuration(
    system: MassSystem,
    x: Configuration,
    kappa: float = 1.0,
    orbit: Optional[Tuple[float, float]] = None,
    refine: bool = True,
    tol: Optional[float] = None,
) -> dict:
    """JSON-совместимый отчёт; orbit = (e, a) включает классификацию монодромии."""
    U = Potential(system, kappa)
    x = centered(x)
    residual, lam = central_residual(U, x)
    report = {
        "masses": list(system.masses),
        "kappa": U.kappa,
        "dim": system.dim,
        "positions": x.points.tolist(),
        "potential": value(U, x),
        "moment_of_inertia": x.norm() ** 2,
        "central_residual": residual,
        "lambda": lam,
    }
    if system.n_bodies == 3:
        report["gascheau"] = gascheau(system.masses).to_dict()
    if system.dim != 2:
        logger.info("dim E = %d: спектральный анализ только для плоских конфигураций", system.dim)
        return report

    if residual <= CENTRAL_TOL:
        cc = central_configuration(U, normalized(x))
    elif refine:
        cc = find_central(U, x)
        report["refined"] = {"iterations": cc.iterations, "positions": cc.config.points.tolist()}
    else:
        logger.info("Конфигурация не центральная (невязка %.3e), уточнение отключено", residual)
        return report

    sphere, kernel = sphere_hessian_spectrum(cc)
    report.update({
        "spectra": _block_spectra(U, cc.config),
        "strongly_nondegenerate": cc.strongly_nondegenerate,
        "strong_minimizer": cc.strong_minimizer,
        "sphere_hessian": {"spectrum": sphere.tolist(), "kernel_dim": kernel},
    })
    if orbit is not None:
        e, a = orbit
        motion = homographic_motion(cc, e, a)
        report["motion"] = classify_motion(motion, tol).to_dict()
    return report


def analyze_positions(
    masses: Sequence[float],
    positions: Sequence[Sequence[float]],
    **kwargs,
) -> dict:
    points = np.asarray(positions, dtype=float)
    system = MassSystem(tuple(masses), dim=points.shape[1])
    return analyze_configuration(system, system.from_points(points), **kwargs)
