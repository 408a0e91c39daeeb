"""Плоские центральные конфигурации: невязка, поиск Ньютоном, сильная невырожденность."""
import logging
import math
from typing import Sequence, Tuple

import numpy as np

from src.errors import (
    CollisionError,
    InvalidInputError,
    SearchFailureError,
    UnsupportedDimensionError,
)
from src.models.central import CentralConfiguration, GascheauParams
from src.models.potential import HessianOperator, Potential
from src.models.system import Configuration
from src.services.mass_metric import (
    build_subspaces,
    center_of_mass,
    centered,
    moment_of_inertia,
    normalized,
    rot90,
    rotate,
)
from src.services.potential import gradient, hessian, value

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-12
CENTERED_REL_TOL = 1e-10
SPECTRAL_TOL = 1e-10
MAX_ITERATIONS = 200
MAX_HALVINGS = 40


def _length_scale(x: Configuration) -> float:
    """Характерный радиус ‖x‖ / sqrt(Σm)."""
    return x.norm() / math.sqrt(x.system.total_mass)


def central_residual(U: Potential, x: Configuration) -> Tuple[float, float]:
    """(‖∇U(x) - λx‖ / ‖∇U(x)‖, λ) при λ = -kappa·U/I."""
    if np.linalg.norm(center_of_mass(x)) > CENTERED_REL_TOL * _length_scale(x):
        raise InvalidInputError("Конфигурация не центрирована")
    u = value(U, x)
    grad = gradient(U, x)
    lam = -U.kappa * u / moment_of_inertia(x)
    residual = (grad - x * lam).norm() / grad.norm()
    return residual, lam


def _fix_gauge(x: Configuration) -> Configuration:
    """Центрирует, нормирует и поворачивает так, чтобы первое ненулевое тело лежало на оси Re."""
    x = normalized(centered(x))
    zs = x.as_complex()
    scale = np.max(np.abs(zs))
    for z in zs:
        if abs(z) > 1e-12 * scale:
            return rotate(x, abs(z) / z)
    return x


def restricted_spectrum(H: HessianOperator, x: Configuration) -> np.ndarray:
    """Собственные значения [⟨HU b_i, b_j⟩] на базисе D."""
    _, _, D = build_subspaces(x)
    if D.dim == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(H.restrict(D))


def central_configuration(U: Potential, x: Configuration, iterations: int = 0) -> CentralConfiguration:
    """Собирает CentralConfiguration для уже центральной плоской x."""
    if x.system.dim != 2:
        raise UnsupportedDimensionError("Сильная невырожденность определена для плоских конфигураций")
    residual, lam = central_residual(U, x)
    H = hessian(U, x)
    spectrum = restricted_spectrum(H, x)
    flag = bool(spectrum.size == 0 or spectrum.min() > SPECTRAL_TOL * H.norm)
    u = value(U, x)
    minimizer = _minimizer_flag(U, normalized(x))
    return CentralConfiguration(
        config=x,
        potential=U,
        lam=lam,
        residual_norm=residual,
        spectrum_D=tuple(float(v) for v in spectrum),
        strongly_nondegenerate=flag,
        strong_minimizer=minimizer,
        potential_value=u,
        iterations=iterations,
    )


def _newton_step(U: Potential, x: Configuration) -> Configuration:
    """Шаг Ньютона для F = ∇U + kappa(U/I)x на D_x; ‖x‖ = 1."""
    _, _, D = build_subspaces(x)
    u = value(U, x)
    F = gradient(U, x) + x * (U.kappa * u / moment_of_inertia(x))
    jac = hessian(U, x).restrict(D) + U.kappa * u * np.eye(D.dim)
    rhs = -D.coordinates(F)
    try:
        step = np.linalg.solve(0.5 * (jac + jac.T), rhs)
    except np.linalg.LinAlgError as exc:
        raise SearchFailureError("Вырожденный якобиан в методе Ньютона", iterate=x) from exc
    return D.from_coordinates(step)


def find_central(
    U: Potential,
    seed: Configuration,
    tol: float = RESIDUAL_TOL,
    max_iterations: int = MAX_ITERATIONS,
) -> CentralConfiguration:
    """Демпфированный Ньютон на единичной сфере E^N_0; результат нормирован, ‖x‖ = 1."""
    if seed.system.dim != 2:
        raise UnsupportedDimensionError("Поиск центральных конфигураций только для dim E = 2")
    x = _fix_gauge(seed)
    residual, _ = central_residual(U, x)
    for iteration in range(max_iterations + 1):
        if residual <= tol:
            logger.info("Центральная конфигурация найдена за %d итераций (невязка %.2e)", iteration, residual)
            return central_configuration(U, x, iterations=iteration)
        if iteration == max_iterations:
            break
        direction = _newton_step(U, x)
        step = 1.0
        for _ in range(MAX_HALVINGS):
            try:
                candidate = _fix_gauge(x + direction * step)
                candidate_residual, _ = central_residual(U, candidate)
            except CollisionError:
                logger.warning("Столкновение при линейном поиске, шаг уменьшен до %.3e", step / 2)
                step /= 2.0
                continue
            if candidate_residual < residual:
                break
            step /= 2.0
        else:
            raise SearchFailureError(
                "Линейный поиск не уменьшил невязку", iterate=x, residual=residual, iterations=iteration
            )
        logger.debug("Ньютон: итерация %d, шаг %.3e, невязка %.3e", iteration + 1, step, candidate_residual)
        x, residual = candidate, candidate_residual
    raise SearchFailureError(
        f"Нет сходимости за {max_iterations} итераций",
        iterate=x,
        residual=residual,
        iterations=max_iterations,
    )


def strong_nondegeneracy(cc: CentralConfiguration) -> Tuple[bool, np.ndarray]:
    """HU_{x0} положительно определён на D (порог 1e-10·‖HU‖)."""
    H = hessian(cc.potential, cc.config)
    spectrum = restricted_spectrum(H, cc.config)
    flag = bool(spectrum.size == 0 or spectrum.min() > SPECTRAL_TOL * H.norm)
    return flag, spectrum


def _sphere_spectrum(U: Potential, a: Configuration) -> Tuple[np.ndarray, int, float]:
    """Спектр D²(U|_S)_a на T_aS = L ⊕ D, размерность ядра и спектральный порог."""
    _, _, D = build_subspaces(a)
    H = hessian(U, a)
    tangent = np.column_stack([rot90(a).coords, D.matrix])
    form = tangent.T @ (a.system.weights[:, None] * (H.matrix @ tangent))
    form = 0.5 * (form + form.T) + U.kappa * value(U, a) * np.eye(tangent.shape[1])
    spectrum = np.linalg.eigvalsh(form)
    tol = SPECTRAL_TOL * H.norm
    kernel = int(np.sum(np.abs(spectrum) <= tol))
    return spectrum, kernel, tol


def _minimizer_flag(U: Potential, a: Configuration) -> bool:
    """ker D²(U|_S)_a = L и все ненулевые собственные значения больше kappa·U(a)."""
    spectrum, kernel, tol = _sphere_spectrum(U, a)
    shift = U.kappa * value(U, a)
    nonzero = spectrum[np.abs(spectrum) > tol]
    return bool(kernel == 1 and np.all(nonzero > shift + tol))


def strong_minimizer(cc: CentralConfiguration) -> Tuple[bool, np.ndarray]:
    """Спектр HU_a + kappa·U(a)·Id на D; флаг по гессиану на сфере."""
    if not cc.is_normalized:
        raise InvalidInputError("Сильный минимум определяется для ‖a‖ = 1")
    U = cc.potential
    H = hessian(U, cc.config)
    spectrum = restricted_spectrum(H, cc.config) + U.kappa * value(U, cc.config)
    return _minimizer_flag(U, cc.config), spectrum


def sphere_hessian_spectrum(cc: CentralConfiguration) -> Tuple[np.ndarray, int]:
    """Спектр D²(U|_S)_a на T_aS = L ⊕ D, L = R·(i a); второе значение — размерность ядра."""
    if not cc.is_normalized:
        raise InvalidInputError("Гессиан на сфере вычисляется для ‖a‖ = 1")
    spectrum, kernel, _ = _sphere_spectrum(cc.potential, cc.config)
    return spectrum, kernel


def gascheau(masses: Sequence[float]) -> GascheauParams:
    """mu = (Σm)² / Σ m_i m_j, lambda = Σ m_i m_j / Σ m_i²."""
    m = [float(v) for v in masses]
    if len(m) != 3:
        raise InvalidInputError(f"Константа Гаскё определена для трёх тел, получено {len(m)}")
    if not all(v > 0 for v in m):
        raise InvalidInputError(f"Массы должны быть положительны: {m}")
    total = sum(m)
    pairs = m[0] * m[1] + m[1] * m[2] + m[0] * m[2]
    squares = sum(v * v for v in m)
    return GascheauParams(mu=total * total / pairs, lambda_ratio=pairs / squares)
