"""Линейная алгебра массовой метрики на E^N и канонические подпространства."""
import logging
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from src.errors import (
    DegenerateInputError,
    InvalidInputError,
    InvalidSubspaceError,
    UnsupportedDimensionError,
)
from src.models.subspace import Subspace, SubspaceLabel
from src.models.system import Configuration, MassSystem

logger = logging.getLogger(__name__)

DEPENDENCE_TOL = 1e-12
GRAM_TOL = 1e-10
CENTERED_TOL = 1e-12


def _same_system(x: Configuration, y: Configuration) -> MassSystem:
    if x.system != y.system:
        raise InvalidInputError("Конфигурации относятся к разным системам масс")
    return x.system


def _require_planar(system: MassSystem) -> None:
    if system.dim != 2:
        raise UnsupportedDimensionError(f"Операция определена только для dim E = 2, получено {system.dim}")


def mass_inner(x: Configuration, y: Configuration) -> float:
    """⟨x, y⟩ = Σ m_i ⟨r_i, s_i⟩."""
    system = _same_system(x, y)
    return float(np.dot(system.weights, x.coords * y.coords))


def complex_mass_inner(x: Configuration, y: Configuration) -> complex:
    """⟨⟨x, y⟩⟩ = Σ m_i z_i conj(w_i)."""
    system = _same_system(x, y)
    _require_planar(system)
    return complex(np.sum(system.mass_array * x.as_complex() * np.conj(y.as_complex())))


def rot90(x: Configuration) -> Configuration:
    """Умножение на i: (a, b) -> (-b, a) для каждого тела."""
    _require_planar(x.system)
    pts = x.points
    return x.with_coords(np.column_stack([-pts[:, 1], pts[:, 0]]))


def rotate(x: Configuration, z: complex) -> Configuration:
    """Комплексное действие z·x (поворот с растяжением каждого тела)."""
    _require_planar(x.system)
    z = complex(z)
    pts = x.points
    re = z.real * pts[:, 0] - z.imag * pts[:, 1]
    im = z.imag * pts[:, 0] + z.real * pts[:, 1]
    return x.with_coords(np.column_stack([re, im]))


def rotation_matrix(system: MassSystem) -> np.ndarray:
    """Матрица J оператора rot90 в канонических координатах."""
    _require_planar(system)
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(system.n_bodies), block)


def center_of_mass(x: Configuration) -> np.ndarray:
    pts = x.points
    return x.system.mass_array @ pts / x.system.total_mass


def delta(system: MassSystem, point: Sequence[float]) -> Configuration:
    """δ(r): все тела в одной точке."""
    p = np.asarray(point, dtype=float)
    if p.shape != (system.dim,):
        raise InvalidInputError(f"Точка должна иметь размерность {system.dim}")
    return Configuration(np.tile(p, system.n_bodies), system)


def centered(x: Configuration) -> Configuration:
    """x - δ(G(x))."""
    return x - delta(x.system, center_of_mass(x))


def moment_of_inertia(x: Configuration) -> float:
    """I(x) = ‖x‖²."""
    return mass_inner(x, x)


def normalized(x: Configuration) -> Configuration:
    norm = x.norm()
    if norm == 0.0:
        raise DegenerateInputError("Нулевая конфигурация не нормируется")
    return x / norm


def is_centered(x: Configuration, tol: float = CENTERED_TOL) -> bool:
    return float(np.linalg.norm(center_of_mass(x))) <= tol * x.norm()


def mass_operator_norm(matrix: np.ndarray, system: MassSystem) -> float:
    """Операторная норма матрицы в массовой метрике."""
    root = np.sqrt(system.weights)
    return float(np.linalg.norm(root[:, None] * matrix / root[None, :], 2))


def _orthogonalize(columns: np.ndarray, basis: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Дважды вычитает проекцию столбцов на ортонормированный базис."""
    if basis.shape[1] == 0:
        return columns
    for _ in range(2):
        columns = columns - basis @ (basis.T @ (weights[:, None] * columns))
    return columns


def _weighted_norms(columns: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(weights[:, None] * columns * columns, axis=0))


def gram_schmidt(
    vectors: Iterable[Configuration],
    system: MassSystem,
    tol: float = DEPENDENCE_TOL,
) -> List[Configuration]:
    """Модифицированный Грам-Шмидт с повторной ортогонализацией; зависимые векторы отбрасываются."""
    weights = system.weights
    basis: List[np.ndarray] = []
    for v in vectors:
        if v.system != system:
            raise InvalidInputError("Вектор из другой системы масс")
        w = v.coords.copy()
        original = math.sqrt(float(np.dot(weights, w * w)))
        if original == 0.0:
            continue
        for _ in range(2):
            for b in basis:
                w = w - np.dot(weights, w * b) * b
        norm = math.sqrt(float(np.dot(weights, w * w)))
        if norm <= tol * original:
            logger.debug("Gram-Schmidt: отброшен зависимый вектор (%.3e)", norm / original)
            continue
        basis.append(w / norm)
    return [Configuration(b, system) for b in basis]


def make_subspace(
    vectors: Iterable[Configuration],
    system: MassSystem,
    label: SubspaceLabel = SubspaceLabel.CUSTOM,
) -> Subspace:
    return Subspace(tuple(gram_schmidt(vectors, system)), label, system)


def check_orthonormal(V: Subspace, tol: float = GRAM_TOL) -> None:
    deviation = V.gram_deviation()
    if deviation > tol:
        raise InvalidSubspaceError(f"Базис {V.label.value} не ортонормирован: отклонение {deviation:.3e}")


def project(x: Configuration, V: Subspace) -> Configuration:
    """Массово-ортогональная проекция Σ ⟨x, b_j⟩ b_j."""
    if x.system != V.system:
        raise InvalidInputError("Конфигурация и подпространство из разных систем масс")
    if V.dim == 0:
        raise InvalidSubspaceError("Проекция на пустой базис")
    check_orthonormal(V)
    return V.from_coordinates(V.coordinates(x))


def projection_residual(x: Configuration, V: Subspace) -> float:
    """Относительное расстояние ‖x - P_V x‖ / ‖x‖ (0 для x = 0)."""
    norm = x.norm()
    if norm == 0.0:
        return 0.0
    if V.dim == 0:
        return 1.0
    return (x - V.from_coordinates(V.coordinates(x))).norm() / norm


def full_subspace(system: MassSystem) -> Subspace:
    """Весь E^N с базисом e_k / sqrt(m)."""
    scale = 1.0 / np.sqrt(system.weights)
    basis = tuple(Configuration(np.eye(system.size)[k] * scale[k], system) for k in range(system.size))
    return Subspace(basis, SubspaceLabel.FULL, system)


def delta_subspace(system: MassSystem) -> Subspace:
    """Δ = образ δ, размерность d."""
    scale = 1.0 / math.sqrt(system.total_mass)
    basis = tuple(delta(system, np.eye(system.dim)[k]) * scale for k in range(system.dim))
    return Subspace(basis, SubspaceLabel.DELTA, system)


def subspace_complement(V: Subspace, label: SubspaceLabel = SubspaceLabel.CUSTOM) -> Subspace:
    """Массово-ортогональное дополнение V в E^N (Грам-Шмидт с выбором ведущего вектора)."""
    system = V.system
    weights = system.weights
    check_orthonormal(V)
    basis = np.array(V.matrix, dtype=float)
    candidates = np.diag(1.0 / np.sqrt(weights))
    added = []
    for _ in range(system.size - V.dim):
        residual = _orthogonalize(candidates, basis, weights)
        norms = _weighted_norms(residual, weights)
        j = int(np.argmax(norms))
        if norms[j] <= DEPENDENCE_TOL:
            raise InvalidSubspaceError("Не удалось дополнить базис: вырожденный остаток")
        b = residual[:, j] / norms[j]
        b = _orthogonalize(b[:, None], basis, weights)[:, 0]
        b /= _weighted_norms(b[:, None], weights)[0]
        basis = np.column_stack([basis, b])
        added.append(Configuration(b, system))
    return Subspace(tuple(added), label, system)


def centered_subspace(system: MassSystem) -> Subspace:
    """E^N_0 = Δ^⊥, размерность d(N-1)."""
    return subspace_complement(delta_subspace(system), SubspaceLabel.CENTERED)


def direct_sum(*subspaces: Subspace, label: SubspaceLabel = SubspaceLabel.CUSTOM) -> Subspace:
    """Объединение базисов попарно ортогональных подпространств."""
    system = subspaces[0].system
    basis: Tuple[Configuration, ...] = tuple(b for V in subspaces for b in V.basis)
    result = Subspace(basis, label, system)
    check_orthonormal(result)
    return result


def similarity_subspace(x0: Configuration) -> Subspace:
    """K = span{x0, i·x0} / ‖x0‖."""
    _require_planar(x0.system)
    unit = normalized(x0)
    return Subspace((unit, rot90(unit)), SubspaceLabel.K, x0.system)


def build_subspaces(x0: Configuration) -> Tuple[Subspace, Subspace, Subspace]:
    """Разложение E^N = Δ ⊕ K ⊕ D в центрированной плоской конфигурации x0."""
    system = x0.system
    _require_planar(system)
    norm = x0.norm()
    if norm == 0.0:
        raise DegenerateInputError("x0 = 0: пространство K не определено")
    if not is_centered(x0):
        raise InvalidInputError(
            f"x0 не центрирована: ‖G(x0)‖ = {np.linalg.norm(center_of_mass(x0)):.3e}"
        )
    Delta = delta_subspace(system)
    K = similarity_subspace(x0)
    D = subspace_complement(direct_sum(Delta, K), SubspaceLabel.D)
    return Delta, K, D


def isosceles_subspace(system: MassSystem, axis: Sequence[float]) -> Subspace:
    """I = {x ∈ E³_0 : r3 ∈ L, r2 - r1 ⊥ L} для m1 = m2 и оси L."""
    if system.n_bodies != 3 or system.dim != 3:
        raise InvalidInputError("Равнобедренные конфигурации определены для N = 3, dim E = 3")
    m1, m2, m3 = system.masses
    if abs(m1 - m2) > 1e-12 * max(m1, m2):
        raise InvalidInputError(f"Нужны равные массы m1 = m2, получено {m1} и {m2}")
    e = np.asarray(axis, dtype=float)
    if e.shape != (3,) or np.linalg.norm(e) == 0.0:
        raise DegenerateInputError("Ось должна быть ненулевым вектором E")
    e = e / np.linalg.norm(e)
    vectors = [system.from_points([-(m3 / (2.0 * m1)) * e, -(m3 / (2.0 * m1)) * e, e])]
    for w in null_space(e[None, :]).T:
        vectors.append(system.from_points([-0.5 * w, 0.5 * w, np.zeros(3)]))
    return make_subspace(vectors, system, SubspaceLabel.ISOSCELES)


def coplanar_subspace(system: MassSystem, normal: Sequence[float]) -> Subspace:
    """S^N: все тела в плоскости S = normal^⊥ (dim E = 3)."""
    if system.dim != 3:
        raise UnsupportedDimensionError("Компланарные конфигурации рассматриваются в dim E = 3")
    nvec = np.asarray(normal, dtype=float)
    if nvec.shape != (3,) or np.linalg.norm(nvec) == 0.0:
        raise DegenerateInputError("Нормаль должна быть ненулевым вектором E")
    plane = null_space(nvec[None, :]).T
    basis = []
    for i, m in enumerate(system.masses):
        for p in plane:
            pts = np.zeros((system.n_bodies, 3))
            pts[i] = p / math.sqrt(m)
            basis.append(system.from_points(pts))
    return Subspace(tuple(basis), SubspaceLabel.COPLANAR, system)
