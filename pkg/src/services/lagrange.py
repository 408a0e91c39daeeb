"""Треугольник Лагранжа: ортогональный треугольник S, матрица 12√3·HU_T и форма A_D."""
import logging
import math
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from src.errors import InvalidInputError, NotFoundError
from src.models.central import CentralConfiguration, MassFamily, RestrictedForm
from src.models.potential import Potential
from src.models.stability import ThresholdResult
from src.models.system import Configuration, MassSystem
from src.services.central import central_configuration, gascheau
from src.services.configurations import OMEGA, equilateral
from src.services.mass_metric import mass_inner, normalized, rot90
from src.services.potential import hessian

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
FORM_SCALE = 12.0 * SQRT3


def _three_masses(masses: Sequence[float]) -> Tuple[float, float, float]:
    m = tuple(float(v) for v in masses)
    if len(m) != 3:
        raise InvalidInputError(f"Нужны три массы, получено {len(m)}")
    return m


def planar_system(masses: Sequence[float]) -> MassSystem:
    return MassSystem(_three_masses(masses), dim=2)


def lagrange_configuration(masses: Sequence[float], kappa: float = 1.0) -> CentralConfiguration:
    """Нормированный центрированный равносторонний треугольник как CentralConfiguration."""
    system = planar_system(masses)
    return central_configuration(Potential(system, kappa), normalized(equilateral(system)))


def orthogonal_triangle_S(masses: Sequence[float], scale: float = 1.0) -> Configuration:
    """S = scale·(m2m3, m1m3ω², m1m2ω): ортогонален Δ и T в комплексной массовой метрике."""
    m1, m2, m3 = _three_masses(masses)
    system = planar_system(masses)
    return system.from_complex([scale * m2 * m3, scale * m1 * m3 * OMEGA ** 2, scale * m1 * m2 * OMEGA])


def squared_distances(x: Configuration) -> Tuple[float, float, float]:
    """(r12², r13², r23²)."""
    p = x.points
    return tuple(float(np.sum((p[i] - p[j]) ** 2)) for i, j in ((0, 1), (0, 2), (1, 2)))


def S_distance_formula(masses: Sequence[float]) -> Tuple[float, float, float]:
    """r_ij²(S) = m_k²(m_i² + m_j² + m_i m_j)."""
    m1, m2, m3 = _three_masses(masses)
    return (
        m3 ** 2 * (m1 ** 2 + m2 ** 2 + m1 * m2),
        m2 ** 2 * (m1 ** 2 + m3 ** 2 + m1 * m3),
        m1 ** 2 * (m2 ** 2 + m3 ** 2 + m2 * m3),
    )


def numeric_matrix_A(masses: Sequence[float]) -> np.ndarray:
    """12√3·HU_T, вычисленная по общим формулам Гессе."""
    system = planar_system(masses)
    return FORM_SCALE * hessian(Potential(system, 1.0), equilateral(system, center=False)).matrix


def closed_form_matrix_A(masses: Sequence[float]) -> np.ndarray:
    """Явная матрица 12√3·HU_T для T = (1, ω, ω²)."""
    m1, m2, m3 = _three_masses(masses)
    s = 3.0 * SQRT3
    return np.array([
        [5 * (m2 + m3), -s * (m2 - m3), -5 * m2, s * m2, -5 * m3, -s * m3],
        [-s * (m2 - m3), -(m2 + m3), s * m2, m2, -s * m3, m3],
        [-5 * m1, s * m1, 5 * m1 - 4 * m3, -s * m1, 4 * m3, 0.0],
        [s * m1, m1, -s * m1, -m1 + 8 * m3, 0.0, -8 * m3],
        [-5 * m1, -s * m1, 4 * m2, 0.0, 5 * m1 - 4 * m2, s * m1],
        [-s * m1, m1, 0.0, -8 * m2, s * m1, -m1 + 8 * m2],
    ])


def closed_form_blocks(masses: Sequence[float]) -> Dict[str, np.ndarray]:
    """Внедиагональные блоки D²U_T: B = A_12, C = A_13, D = A_23."""
    m1, m2, m3 = _three_masses(masses)
    return {
        "B": m1 * m2 / FORM_SCALE * np.array([[-5.0, 3 * SQRT3], [3 * SQRT3, 1.0]]),
        "C": m1 * m3 / FORM_SCALE * np.array([[-5.0, -3 * SQRT3], [-3 * SQRT3, 1.0]]),
        "D": m2 * m3 / FORM_SCALE * np.array([[4.0, 0.0], [0.0, -8.0]]),
    }


def numeric_blocks(masses: Sequence[float]) -> Dict[str, np.ndarray]:
    """Те же блоки из численной матрицы D²U_T = M·HU_T."""
    system = planar_system(masses)
    H = hessian(Potential(system, 1.0), equilateral(system, center=False))
    second = system.weights[:, None] * H.matrix
    return {"B": second[0:2, 2:4], "C": second[0:2, 4:6], "D": second[2:4, 4:6]}


def eta_zeta(masses: Sequence[float]) -> Tuple[Configuration, Configuration]:
    """Базис η (треугольник 2S) и ζ = iη пространства D."""
    eta = orthogonal_triangle_S(masses, scale=2.0)
    return eta, rot90(eta)


def restricted_AD(masses: Sequence[float]) -> RestrictedForm:
    """Форма ⟨A u, v⟩ на базисе {η, ζ}, A = 12√3·HU_T."""
    system = planar_system(masses)
    A = numeric_matrix_A(masses)
    eta, zeta = eta_zeta(masses)
    A_eta = Configuration(A @ eta.coords, system)
    A_zeta = Configuration(A @ zeta.coords, system)
    return RestrictedForm(
        a=mass_inner(eta, A_eta),
        b=mass_inner(eta, A_zeta),
        c=mass_inner(zeta, A_eta),
        d=mass_inner(zeta, A_zeta),
    )


def closed_form_AD(masses: Sequence[float]) -> RestrictedForm:
    """a = ν(-16m1+20m2+20m3), d = ν(32m1-4m2-4m3), b = c = 12√3ν(m3-m2)."""
    m1, m2, m3 = _three_masses(masses)
    nu = m1 * m2 * m3 * (m2 * m3 + m1 * m3 + m1 * m2)
    off = nu * FORM_SCALE * (m3 - m2)
    return RestrictedForm(
        a=nu * (-16 * m1 + 20 * m2 + 20 * m3),
        b=off,
        c=off,
        d=nu * (32 * m1 - 4 * m2 - 4 * m3),
    )


def closed_form_trace(masses: Sequence[float]) -> float:
    """tr A_D = 16 m1m2m3 (Σm)(Σ m_i m_j)."""
    m1, m2, m3 = _three_masses(masses)
    return 16 * m1 * m2 * m3 * (m1 + m2 + m3) * (m2 * m3 + m1 * m3 + m1 * m2)


def closed_form_det(masses: Sequence[float]) -> float:
    """det A_D = ν²(-512 Σm_i² + 704 Σ m_i m_j)."""
    m1, m2, m3 = _three_masses(masses)
    pairs = m2 * m3 + m1 * m3 + m1 * m2
    nu = m1 * m2 * m3 * pairs
    return nu ** 2 * (-512 * (m1 ** 2 + m2 ** 2 + m3 ** 2) + 704 * pairs)


def D_invariance_check(masses: Sequence[float]) -> float:
    """Aη и Aζ — отрицательно ориентированные треугольники: ωz1 = z3, ωz3 = z2, ωz2 = z1."""
    m1, m2, m3 = _three_masses(masses)
    system = planar_system(masses)
    A = numeric_matrix_A(masses)
    weights = np.array([m2 * m3, m1 * m3, m1 * m2])
    worst = 0.0
    for v in eta_zeta(masses):
        zs = Configuration(A @ v.coords, system).as_complex() / weights
        scale = max(np.max(np.abs(zs)), np.finfo(float).tiny)
        dev = max(abs(OMEGA * zs[0] - zs[2]), abs(OMEGA * zs[2] - zs[1]), abs(OMEGA * zs[1] - zs[0]))
        worst = max(worst, dev / scale)
    return worst


def mu_to_masses(mu: float) -> Tuple[float, float, float]:
    """Массы (1, m, m) с заданной константой Гаскё: m = 1/((mu-2) + sqrt(mu(mu-3)))."""
    mu = float(mu)
    if not mu >= 3.0:
        raise InvalidInputError(f"mu >= 3 для положительных масс, получено {mu}")
    m = 1.0 / ((mu - 2.0) + math.sqrt(mu * (mu - 3.0)))
    return (1.0, m, m)


def bisect_predicate(
    predicate: Callable[[float], bool],
    lo: float,
    hi: float,
    width: Callable[[float, float], float],
    tol: float,
    max_iterations: int = 200,
) -> Tuple[float, float, int]:
    """Бисекция по смене значения predicate между lo и hi."""
    p_lo, p_hi = predicate(lo), predicate(hi)
    if p_lo == p_hi:
        raise NotFoundError(f"Нет смены знака на [{lo}, {hi}]")
    iterations = 0
    while width(lo, hi) > tol and iterations < max_iterations:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if predicate(mid) == p_lo:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return lo, hi, iterations


def bisect_det_threshold(
    family: MassFamily,
    lo: float = 1e-3,
    hi: float = 1.0,
    tol: float = 1e-10,
) -> ThresholdResult:
    """Смена знака det A_D вдоль семейства; скобка по mu шириной не более tol."""
    if not 0 < lo < hi:
        raise InvalidInputError(f"Интервал параметра должен быть 0 < lo < hi, получено [{lo}, {hi}]")

    def mu_of(m: float) -> float:
        return gascheau(family.masses(m)).mu

    def positive(m: float) -> bool:
        return restricted_AD(family.masses(m)).det > 0

    a, b, iterations = bisect_predicate(positive, lo, hi, lambda p, q: abs(mu_of(p) - mu_of(q)), tol)
    mu_a, mu_b = mu_of(a), mu_of(b)
    logger.info("Порог det A_D для семейства %s: mu в [%.12f, %.12f]", family.name, min(mu_a, mu_b), max(mu_a, mu_b))
    return ThresholdResult(
        criterion="det",
        family=family.name,
        parameter_bracket=(a, b),
        mu_bracket=(min(mu_a, mu_b), max(mu_a, mu_b)),
        iterations=iterations,
    )
