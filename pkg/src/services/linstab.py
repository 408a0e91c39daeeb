"""Уравнение Якоби вдоль движений, монодромия по блокам и классификация Флоке."""
import logging
import math
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import linear_sum_assignment

from src.config import settings
from src.errors import CollisionApproachError, HypothesisError, InvalidInputError
from src.models.orbit import HomographicMotion, Trajectory
from src.models.potential import Potential
from src.models.stability import (
    ComparisonReport,
    FloquetClass,
    JacobiField,
    LinearizedSystem,
    Motion,
    MonodromyReport,
    MotionClassification,
    ThresholdResult,
    Verdict,
)
from src.models.subspace import Subspace, SubspaceLabel
from src.models.system import Configuration
from src.services.lagrange import bisect_predicate, lagrange_configuration, mu_to_masses
from src.services.mass_metric import (
    build_subspaces,
    full_subspace,
    mass_operator_norm,
    projection_residual,
    rotation_matrix,
)
from src.services.orbits import homographic_motion, kepler_position
from src.services.potential import hessian, hessian_array

logger = logging.getLogger(__name__)

SPAN_TOL = 1e-10
SEMISIMPLE_COND = 1e6
COMPARISON_SLACK = 1e-8

BlockMatrixFunction = Callable[[float], np.ndarray]


def forced_multiplier_count(block: Subspace) -> int:
    """Число мультипликаторов, равных 1 по построению (поле Якоби ẋ, энергия, трансляции)."""
    if block.label in (SubspaceLabel.DELTA, SubspaceLabel.K):
        return 2 * block.dim
    if block.label == SubspaceLabel.CENTERED:
        return 4
    if block.label == SubspaceLabel.FULL:
        return 2 * block.system.dim + 4
    return 0


def _homographic_block_function(motion: HomographicMotion, block: Subspace) -> BlockMatrixFunction:
    """B(t) = |z|^-3 P^T M HU_{x0} P, P = R_θ^T Φ, z = |z| e^{iθ}."""
    system = motion.system
    phi = block.matrix
    j_phi = rotation_matrix(system) @ phi
    form = system.weights[:, None] * hessian(motion.potential, motion.x0).matrix
    s00 = phi.T @ form @ phi
    s0j = phi.T @ form @ j_phi
    sj0 = j_phi.T @ form @ phi
    sjj = j_phi.T @ form @ j_phi
    orbit = motion.orbit

    def block_matrix_at(t: float) -> np.ndarray:
        z = kepler_position(orbit, t)
        r = abs(z)
        c, s = z.real / r, z.imag / r
        return (c * c * s00 - c * s * (s0j + sj0) + s * s * sjj) / r ** 3

    return block_matrix_at


def _trajectory_block_function(motion: Trajectory, block: Subspace) -> BlockMatrixFunction:
    system = motion.system
    phi = block.matrix
    weighted = system.weights[:, None] * phi
    masses = system.mass_array
    kappa = motion.potential.kappa

    def block_matrix_at(t: float) -> np.ndarray:
        points = motion.positions_at(t).points
        return weighted.T @ hessian_array(masses, points, kappa) @ phi

    return block_matrix_at


def block_matrix_function(motion: Motion, block: Subspace) -> BlockMatrixFunction:
    """t -> B(t) = [⟨HU_{x(t)} b_i, b_j⟩]."""
    if block.system != motion.system:
        raise InvalidInputError("Блок и движение из разных систем масс")
    if isinstance(motion, HomographicMotion):
        return _homographic_block_function(motion, block)
    return _trajectory_block_function(motion, block)


def block_matrix(motion: Motion, block: Subspace, t: float) -> np.ndarray:
    return block_matrix_function(motion, block)(t)


def _check_in_span(v: Configuration, block: Subspace, name: str) -> None:
    if projection_residual(v, block) > SPAN_TOL:
        raise InvalidInputError(f"{name} не лежит в блоке {block.label.value}")


def _second_order_rhs(B: BlockMatrixFunction, k: int):
    def rhs(t, y):
        return np.concatenate([y[k:], B(t) @ y[:k]])
    return rhs


def jacobi_integrate(
    motion: Motion,
    block: Subspace,
    J0: Configuration,
    Jdot0: Configuration,
    t_span: Tuple[float, float],
    tol: Optional[float] = None,
    t_eval: Optional[Sequence[float]] = None,
) -> JacobiField:
    """Интегрирует J'' = B(t)J в координатах блока."""
    tol = settings.integrator_tol if tol is None else tol
    _check_in_span(J0, block, "J(0)")
    _check_in_span(Jdot0, block, "J'(0)")
    k = block.dim
    y0 = np.concatenate([block.coordinates(J0), block.coordinates(Jdot0)])
    rhs = _second_order_rhs(block_matrix_function(motion, block), k)
    sol = solve_ivp(rhs, t_span, y0, method="DOP853", rtol=tol, atol=tol, dense_output=True, t_eval=t_eval)
    if sol.status != 0:
        raise CollisionApproachError(f"Поле Якоби: {sol.message}", float(sol.t[-1]), np.asarray(sol.y[:, -1]))
    return JacobiField(
        block=block,
        t=np.asarray(sol.t),
        coords=np.asarray(sol.y[:k]).T,
        velocities=np.asarray(sol.y[k:]).T,
        solution=sol.sol,
    )


def classify_multipliers(
    matrix: np.ndarray,
    forced: int,
    unit_circle_tol: Optional[float] = None,
) -> Tuple[np.ndarray, FloquetClass, np.ndarray, int, int, int]:
    """Мультипликаторы (упорядоченные), класс, | |λ|-1 |, размерности E^s, E^u, E^c."""
    tol = settings.unit_circle_tol if unit_circle_tol is None else unit_circle_tol
    values, vectors = np.linalg.eig(matrix)
    order = np.lexsort((values.imag, values.real))
    values, vectors = values[order], vectors[:, order]
    margins = np.abs(np.abs(values) - 1.0)
    by_unit = np.argsort(np.abs(values - 1.0), kind="stable")
    free_idx = np.sort(by_unit[forced:])
    free = values[free_idx]
    free_margins = margins[free_idx]
    forced_error = float(np.abs(values[by_unit[:forced]] - 1.0).max()) if forced else 0.0

    if forced_error > math.sqrt(tol):
        # собственное значение 1 с жордановой клеткой расщепляется на O(sqrt(ε))
        logger.warning("Вынужденные мультипликаторы отходят от 1 на %.3e", forced_error)
        cls = FloquetClass.DEGENERATE
    elif free.size == 0:
        cls = FloquetClass.ELLIPTIC
    elif np.any(np.abs(free - 1.0) <= tol):
        cls = FloquetClass.DEGENERATE
    elif np.all(free_margins > tol):
        cls = FloquetClass.HYPERBOLIC
    elif np.all(free_margins <= tol):
        semisimple = np.linalg.cond(vectors[:, free_idx]) < SEMISIMPLE_COND
        cls = FloquetClass.ELLIPTIC if semisimple else FloquetClass.DEGENERATE
    else:
        cls = FloquetClass.MIXED

    stable = int(np.sum(np.abs(free) < 1.0 - tol))
    unstable = int(np.sum(np.abs(free) > 1.0 + tol))
    center = len(values) - stable - unstable
    return values, cls, margins, stable, unstable, center


def _pairing_error(values: np.ndarray) -> float:
    """max_i min_j |λ_i λ_j - 1|."""
    if values.size == 0:
        return 0.0
    products = np.abs(values[:, None] * values[None, :] - 1.0)
    return float(np.max(np.min(products, axis=1)))


def _empty_report(label: SubspaceLabel, period: float) -> MonodromyReport:
    return MonodromyReport(
        label=label,
        period=period,
        matrix=np.zeros((0, 0)),
        multipliers=np.zeros(0, dtype=complex),
        classification=FloquetClass.ELLIPTIC,
        margins=np.zeros(0),
        forced=0,
        stable_dim=0,
        unstable_dim=0,
        center_dim=0,
        pairing_error=0.0,
        product_error=0.0,
    )


def monodromy(
    motion: Motion,
    block: Subspace,
    tol: Optional[float] = None,
    unit_circle_tol: Optional[float] = None,
) -> MonodromyReport:
    """Фундаментальная матрица X' = A(t)X за период от единичной, её спектр и класс."""
    if not isinstance(motion, HomographicMotion):
        raise InvalidInputError("Монодромия определена только для периодических (эллиптических) движений")
    tol = settings.integrator_tol if tol is None else tol
    period = motion.period
    k = block.dim
    if k == 0:
        return _empty_report(block.label, period)
    B = block_matrix_function(motion, block)
    n = 2 * k

    def rhs(t, y):
        Y = y.reshape(n, n)
        return np.vstack([Y[k:], B(t) @ Y[:k]]).reshape(-1)

    logger.debug("Монодромия блока %s (dim %d), T = %.6f", block.label.value, k, period)
    sol = solve_ivp(rhs, (0.0, period), np.eye(n).reshape(-1), method="DOP853", rtol=tol, atol=tol)
    if sol.status != 0:
        raise CollisionApproachError(f"Монодромия: {sol.message}", float(sol.t[-1]), np.asarray(sol.y[:, -1]))
    M = np.asarray(sol.y[:, -1]).reshape(n, n)
    forced = forced_multiplier_count(block)
    values, cls, margins, stable, unstable, center = classify_multipliers(M, forced, unit_circle_tol)
    return MonodromyReport(
        label=block.label,
        period=period,
        matrix=M,
        multipliers=values,
        classification=cls,
        margins=margins,
        forced=forced,
        stable_dim=stable,
        unstable_dim=unstable,
        center_dim=center,
        pairing_error=_pairing_error(values),
        product_error=abs(float(np.linalg.det(M)) - 1.0),
    )


def linearized_system(motion: Motion, block: Subspace) -> LinearizedSystem:
    if block.system != motion.system:
        raise InvalidInputError("Блок и движение из разных систем масс")
    return LinearizedSystem(motion=motion, block=block)


def classify_motion(
    motion: HomographicMotion,
    tol: Optional[float] = None,
    unit_circle_tol: Optional[float] = None,
) -> MotionClassification:
    """Монодромия на Δ, K, D и вердикт по существенной части D."""
    blocks: Dict[str, MonodromyReport] = {}
    for V in build_subspaces(motion.x0):
        system = linearized_system(motion, V)
        blocks[V.label.value] = monodromy(system.motion, system.block, tol, unit_circle_tol)
    essential = blocks[SubspaceLabel.D.value]
    if essential.classification in (FloquetClass.HYPERBOLIC, FloquetClass.MIXED):
        verdict = Verdict.UNSTABLE
    elif essential.classification == FloquetClass.ELLIPTIC:
        verdict = Verdict.STABLE
    else:
        verdict = Verdict.DEGENERATE
    logger.info(
        "Движение e = %.3f: блок D %s, вердикт '%s'",
        motion.orbit.eccentricity, essential.classification.value, verdict.value,
    )
    return MotionClassification(motion=motion, blocks=blocks, verdict=verdict)


def splitting_verify(U: Potential, x: Configuration, V: Subspace) -> float:
    """max(‖P_{V⊥} HU P_V‖, ‖P_V HU P_{V⊥}‖) / ‖HU‖ при x ∈ V."""
    if projection_residual(x, V) > SPAN_TOL:
        raise InvalidInputError(f"Конфигурация не лежит в подпространстве {V.label.value}")
    H = hessian(U, x)
    P = V.projector()
    Q = np.eye(V.system.size) - P
    coupling = max(
        mass_operator_norm(Q @ H.matrix @ P, V.system),
        mass_operator_norm(P @ H.matrix @ Q, V.system),
    )
    return coupling / max(H.norm, np.finfo(float).tiny)


def keplerian_lower_bound(motion: HomographicMotion) -> float:
    """α = k^-3·μ_D, k = a(1+e), μ_D = min спектра HU_{x0}|_D."""
    spectrum = motion.cc.spectrum_D
    if not spectrum:
        raise InvalidInputError("Пространство D пусто")
    return min(spectrum) / motion.orbit.aphelion ** 3


def _comparison_bound(alpha: float, t: np.ndarray) -> np.ndarray:
    """‖z(t)‖ для z'' = αz, z(0) = 0, ‖z'(0)‖ = 1."""
    if alpha > 0:
        root = math.sqrt(alpha)
        return np.sinh(root * t) / root
    if alpha < 0:
        root = math.sqrt(-alpha)
        return np.sin(root * t) / root
    return t


def comparison_theorem_check(
    B: BlockMatrixFunction,
    alpha: float,
    t_span: Tuple[float, float],
    trials: int = 20,
    seed: int = 0,
    samples: int = 64,
    tol: Optional[float] = None,
) -> ComparisonReport:
    """‖J(t)‖ ≥ ‖z(t)‖ для J'' = B(t)J, J(0) = 0, ‖J'(0)‖ = 1 при B(t) ≥ α."""
    tol = settings.integrator_tol if tol is None else tol
    t0, t1 = t_span
    ts = np.linspace(t0, t1, samples)
    min_eig = min(float(np.linalg.eigvalsh(0.5 * (B(t) + B(t).T)).min()) for t in ts)
    if min_eig < alpha - 1e-12 * max(1.0, abs(alpha)):
        logger.warning("Гипотеза сравнения нарушена: min eig B(t) = %.6e < α = %.6e", min_eig, alpha)
        raise HypothesisError(f"min eig B(t) = {min_eig:.6e} < α = {alpha:.6e}")
    k = B(t0).shape[0]
    rhs = _second_order_rhs(B, k)
    bound = _comparison_bound(alpha, ts - t0)
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    max_dev = 0.0
    for _ in range(trials):
        w = rng.normal(size=k)
        w /= np.linalg.norm(w)
        sol = solve_ivp(rhs, t_span, np.concatenate([np.zeros(k), w]), method="DOP853",
                        rtol=tol, atol=tol, t_eval=ts)
        norms = np.linalg.norm(sol.y[:k], axis=0)
        slack = norms - bound
        min_slack = min(min_slack, float(slack.min()))
        max_dev = max(max_dev, float(np.abs(slack).max()))
    passed = min_slack >= -COMPARISON_SLACK
    logger.info("Теорема сравнения: α = %.4e, %d испытаний, min запас %.3e", alpha, trials, min_slack)
    return ComparisonReport(
        alpha=alpha,
        trials=trials,
        passed=passed,
        min_slack=min_slack,
        max_equality_deviation=max_dev,
        min_eigenvalue=min_eig,
    )


def richardson_check(motion: HomographicMotion, block: Subspace, tol: Optional[float] = None) -> float:
    """Максимальный сдвиг мультипликаторов при уменьшении допуска вдвое."""
    tol = settings.integrator_tol if tol is None else tol
    coarse = monodromy(motion, block, tol).multipliers
    fine = monodromy(motion, block, tol / 2.0).multipliers
    if coarse.size == 0:
        return 0.0
    cost = np.abs(coarse[:, None] - fine[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def full_decoupling_check(
    motion: HomographicMotion,
    J0: Configuration,
    Jdot0: Configuration,
    samples: int = 32,
    tol: Optional[float] = None,
) -> float:
    """Проекции решения полной системы против решений по блокам Δ, K, D; максимум отклонения."""
    t_eval = np.linspace(0.0, motion.period, samples)
    full = jacobi_integrate(motion, full_subspace(motion.system), J0, Jdot0, (0.0, motion.period), tol, t_eval)
    configs = [full.configuration(i) for i in range(len(t_eval))]
    scale = max(1.0, float(full.norms().max()))
    worst = 0.0
    for V in build_subspaces(motion.x0):
        if V.dim == 0:
            continue
        start = V.from_coordinates(V.coordinates(J0))
        start_dot = V.from_coordinates(V.coordinates(Jdot0))
        part = jacobi_integrate(motion, V, start, start_dot, (0.0, motion.period), tol, t_eval)
        projected = np.array([V.coordinates(c) for c in configs])
        worst = max(worst, float(np.abs(projected - part.coords).max()))
    return worst / scale


def stability_transition(
    e: float = 0.0,
    mu_lo: float = 20.0,
    mu_hi: float = 30.0,
    width: float = 1e-3,
    tol: Optional[float] = None,
    unit_circle_tol: Optional[float] = None,
) -> ThresholdResult:
    """Бисекция по mu на семействе (1, m, m): смена эллиптичности блока D."""

    def elliptic(mu: float) -> bool:
        cc = lagrange_configuration(mu_to_masses(mu))
        motion = homographic_motion(cc, e)
        _, _, D = build_subspaces(cc.config)
        report = monodromy(motion, D, tol, unit_circle_tol)
        logger.debug("mu = %.6f, e = %.3f: блок D %s", mu, e, report.classification.value)
        return report.classification == FloquetClass.ELLIPTIC

    lo, hi, iterations = bisect_predicate(elliptic, mu_lo, mu_hi, lambda a, b: abs(b - a), width)
    logger.info("Переход устойчивости при e = %.3f: mu в [%.6f, %.6f]", e, lo, hi)
    return ThresholdResult(
        criterion="monodromy",
        family="1,m,m",
        parameter_bracket=(mu_to_masses(lo)[1], mu_to_masses(hi)[1]),
        mu_bracket=(min(lo, hi), max(lo, hi)),
        iterations=iterations,
        e=e,
    )
