"""Однородный потенциал U(x) = Σ m_i m_j r_ij^-kappa: значение, градиент и эндоморфизм Гессе."""
import logging
from typing import Tuple

import numpy as np

from src.errors import CollisionError, InvalidInputError, UnsupportedDimensionError
from src.models.potential import HessianOperator, Potential
from src.models.system import Configuration, MassSystem
from src.services.mass_metric import delta, full_subspace, mass_inner, rotate

logger = logging.getLogger(__name__)

COLLISION_THRESHOLD = 1e-13


def _check_system(U: Potential, x: Configuration) -> None:
    if x.system != U.system:
        raise InvalidInputError("Конфигурация и потенциал из разных систем масс")


def pair_geometry(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """diff[i, j] = r_j - r_i и матрица расстояний."""
    diff = points[None, :, :] - points[:, None, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    return diff, dist


def check_collisions(x: Configuration, dist: np.ndarray = None) -> None:
    """CollisionError, если r_ij <= 1e-13·‖x‖."""
    if dist is None:
        _, dist = pair_geometry(x.points)
    threshold = COLLISION_THRESHOLD * x.norm()
    n = x.system.n_bodies
    iu = np.triu_indices(n, k=1)
    close = dist[iu] <= threshold
    if np.any(close):
        k = int(np.argmax(close))
        i, j = int(iu[0][k]), int(iu[1][k])
        raise CollisionError(i, j, float(dist[i, j]))


def _inverse_powers(dist: np.ndarray, power: float) -> np.ndarray:
    """r_ij^-power вне диагонали, 0 на диагонали."""
    n = dist.shape[0]
    safe = dist + np.eye(n)
    out = safe ** (-power)
    np.fill_diagonal(out, 0.0)
    return out


def potential_array(masses: np.ndarray, points: np.ndarray, kappa: float) -> float:
    _, dist = pair_geometry(points)
    mm = np.outer(masses, masses)
    return 0.5 * float(np.sum(mm * _inverse_powers(dist, kappa)))


def gradient_array(masses: np.ndarray, points: np.ndarray, kappa: float) -> np.ndarray:
    """(∇U)_i = kappa Σ_j m_j r_ij^-(kappa+2) (r_j - r_i), форма (N, d)."""
    diff, dist = pair_geometry(points)
    coef = kappa * masses[None, :] * _inverse_powers(dist, kappa + 2.0)
    return np.einsum("ij,ijk->ik", coef, diff)


def hessian_array(masses: np.ndarray, points: np.ndarray, kappa: float) -> np.ndarray:
    """Матрица M^-1 D²U в канонических координатах."""
    n, d = points.shape
    diff, dist = pair_geometry(points)
    mm = np.outer(masses, masses)
    radial = -kappa * (kappa + 2.0) * mm * _inverse_powers(dist, kappa + 4.0)
    isotropic = kappa * mm * _inverse_powers(dist, kappa + 2.0)
    blocks = radial[:, :, None, None] * diff[:, :, :, None] * diff[:, :, None, :]
    blocks = blocks + isotropic[:, :, None, None] * np.eye(d)[None, None, :, :]
    # A_ii = -Σ_{j≠i} A_ij
    idx = np.arange(n)
    blocks[idx, idx] = -np.sum(blocks, axis=1)
    second = blocks.transpose(0, 2, 1, 3).reshape(n * d, n * d)
    return second / np.repeat(masses, d)[:, None]


def value(U: Potential, x: Configuration) -> float:
    """U(x)."""
    _check_system(U, x)
    check_collisions(x)
    return potential_array(U.system.mass_array, x.points, U.kappa)


def gradient(U: Potential, x: Configuration) -> Configuration:
    """Градиент U в массовой метрике: x'' = ∇U(x)."""
    _check_system(U, x)
    check_collisions(x)
    return x.with_coords(gradient_array(U.system.mass_array, x.points, U.kappa))


def euler_identity_check(U: Potential, x: Configuration) -> float:
    """⟨∇U(x), x⟩ + kappa·U(x); для однородного U равно нулю."""
    return mass_inner(gradient(U, x), x) + U.kappa * value(U, x)


def hessian(U: Potential, x: Configuration) -> HessianOperator:
    """HU_x = M^-1 D²U(x)."""
    _check_system(U, x)
    check_collisions(x)
    return HessianOperator(hessian_array(U.system.mass_array, x.points, U.kappa), x)


def adjoint_defect(H: HessianOperator) -> float:
    """max |⟨H e_k, e_l⟩ - ⟨e_k, H e_l⟩| / ‖H‖ по каноническому базису."""
    w = H.system.weights
    form = w[:, None] * H.matrix
    return float(np.max(np.abs(form - form.T))) / max(H.norm, np.finfo(float).tiny)


def translation_defect(H: HessianOperator) -> float:
    """max ‖HU δ(e)‖ / ‖HU‖ по направлениям e объемлющего пространства."""
    system: MassSystem = H.system
    worst = 0.0
    for e in np.eye(system.dim):
        worst = max(worst, H.apply(delta(system, e)).norm())
    return worst / max(H.norm, np.finfo(float).tiny)


def _require_scaling_case(U: Potential, z: complex) -> None:
    if not U.is_newtonian:
        raise InvalidInputError("Лемма о масштабировании сформулирована для kappa = 1")
    if U.system.dim != 2:
        raise UnsupportedDimensionError("Лемма о масштабировании для плоских конфигураций")
    if complex(z) == 0:
        raise InvalidInputError("z = 0 недопустимо")


def hessian_scaling_check(U: Potential, x: Configuration, z: complex) -> float:
    """max_v ‖HU_{zx} v - z|z|^-3 HU_x(z^-1 v)‖ / (‖HU_{zx}‖·‖v‖)."""
    _require_scaling_case(U, z)
    z = complex(z)
    H_zx = hessian(U, rotate(x, z))
    H_x = hessian(U, x)
    scale = abs(z) ** -3
    worst = 0.0
    for v in full_subspace(U.system).basis:
        lhs = H_zx.apply(v)
        rhs = rotate(H_x.apply(rotate(v, 1.0 / z)), z) * scale
        worst = max(worst, (lhs - rhs).norm())
    return worst / max(H_zx.norm, np.finfo(float).tiny)


def quadratic_form_scaling_check(U: Potential, x0: Configuration, z: complex, v: Configuration) -> float:
    """|⟨HU_{z x0} v, v⟩ - |z|^-1 ⟨HU_{x0}(z^-1 v), z^-1 v⟩|, отнесённое к ‖HU_{z x0}‖·‖v‖²."""
    _require_scaling_case(U, z)
    z = complex(z)
    H_zx = hessian(U, rotate(x0, z))
    w = rotate(v, 1.0 / z)
    lhs = H_zx.bilinear(v, v)
    rhs = hessian(U, x0).bilinear(w, w) / abs(z)
    return abs(lhs - rhs) / max(H_zx.norm * mass_inner(v, v), np.finfo(float).tiny)
