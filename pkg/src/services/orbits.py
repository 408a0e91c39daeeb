"""Кеплеровы и гомографические движения, прямое интегрирование уравнений Ньютона."""
import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from src.config import settings
from src.errors import CollisionApproachError, InvalidInputError, SearchFailureError, UnsupportedOrbitError
from src.models.central import CentralConfiguration
from src.models.orbit import HomographicMotion, KeplerOrbit, Trajectory
from src.models.potential import Potential
from src.models.system import Configuration
from src.services.mass_metric import mass_inner, rotate
from src.services.potential import check_collisions, gradient_array, pair_geometry, value

logger = logging.getLogger(__name__)

KEPLER_TOL = 1e-14
KEPLER_MAX_ITERATIONS = 100
APPROACH_RADIUS = 1e-8


def _last_state(sol) -> Tuple[float, np.ndarray]:
    """Последнее достоверное состояние: точка события или последний узел."""
    if sol.t_events is not None and len(sol.t_events[0]):
        return float(sol.t_events[0][-1]), np.asarray(sol.y_events[0][-1])
    if sol.sol is not None and sol.t.size:
        return float(sol.t[-1]), np.asarray(sol.sol(sol.t[-1]))
    return float("nan"), np.zeros(0)


def eccentric_anomaly(
    M: float,
    e: float,
    tol: float = KEPLER_TOL,
    max_iterations: int = KEPLER_MAX_ITERATIONS,
) -> float:
    """Решение E - e·sin E = M методом Ньютона до |ΔE| <= tol."""
    if not 0.0 <= e < 1.0:
        raise UnsupportedOrbitError(f"Только эллиптические орбиты, e = {e}")
    turns = math.floor(M / (2.0 * math.pi))
    m = M - 2.0 * math.pi * turns
    E = m if e < 0.8 else math.pi
    for _ in range(max_iterations):
        dE = (E - e * math.sin(E) - m) / (1.0 - e * math.cos(E))
        E -= dE
        if abs(dE) <= tol:
            return E + 2.0 * math.pi * turns
    residual = abs(E - e * math.sin(E) - m)
    logger.warning("Уравнение Кеплера не сошлось: M = %.6f, e = %.6f, невязка %.3e", M, e, residual)
    raise SearchFailureError(
        f"Уравнение Кеплера не сошлось за {max_iterations} итераций (e = {e})",
        iterate=E + 2.0 * math.pi * turns,
        residual=residual,
        iterations=max_iterations,
    )


def kepler_position(orbit: KeplerOrbit, t: float) -> complex:
    """z(t) = a(cos E - e) + i·a√(1-e²)·sin E, перицентр при t = 0."""
    a, e = orbit.semi_major_axis, orbit.eccentricity
    E = eccentric_anomaly(orbit.mean_motion * t, e)
    return complex(a * (math.cos(E) - e), a * math.sqrt(1.0 - e * e) * math.sin(E))


def kepler_velocity(orbit: KeplerOrbit, t: float) -> complex:
    """ż(t) при dE/dt = n / (1 - e cos E)."""
    a, e = orbit.semi_major_axis, orbit.eccentricity
    E = eccentric_anomaly(orbit.mean_motion * t, e)
    E_dot = orbit.mean_motion / (1.0 - e * math.cos(E))
    return complex(-a * math.sin(E) * E_dot, a * math.sqrt(1.0 - e * e) * math.cos(E) * E_dot)


def homographic_motion(cc: CentralConfiguration, e: float, a: float = 1.0) -> HomographicMotion:
    """x(t) = z(t)·x0 с λ' = U(x0) для нормированной x0 (kappa = 1)."""
    if not cc.potential.is_newtonian:
        raise InvalidInputError("Эллиптические гомографические движения строятся для kappa = 1")
    orbit = KeplerOrbit(gravitational_parameter=-cc.lam / cc.kappa, eccentricity=e, semi_major_axis=a)
    return HomographicMotion(cc=cc, orbit=orbit)


def homographic_state(motion: HomographicMotion, t: float) -> Tuple[Configuration, Configuration]:
    """(z(t)·x0, ż(t)·x0)."""
    x0 = motion.x0
    return rotate(x0, kepler_position(motion.orbit, t)), rotate(x0, kepler_velocity(motion.orbit, t))


def homothetic_state(cc: CentralConfiguration, phi: float, phi_dot: float) -> Tuple[Configuration, Configuration]:
    """(φ·x0, φ'·x0)."""
    return cc.config * phi, cc.config * phi_dot


def homothetic_solution(
    cc: CentralConfiguration,
    phi0: float,
    phi_dot0: float,
    t_span: Tuple[float, float],
    tol: Optional[float] = None,
    t_eval: Optional[Sequence[float]] = None,
):
    """Решение φ'' = λ·φ^-(kappa+1) для x(t) = φ(t)·x0 (любая kappa)."""
    tol = settings.integrator_tol if tol is None else tol
    lam, kappa = cc.lam, cc.kappa
    if phi0 <= 0:
        raise InvalidInputError("φ(0) должно быть положительным")

    def rhs(_t, y):
        return [y[1], lam * y[0] ** (-(kappa + 1.0))]

    def collapse(_t, y):
        return y[0] - APPROACH_RADIUS * phi0

    collapse.terminal = True
    sol = solve_ivp(rhs, t_span, [phi0, phi_dot0], method="DOP853", rtol=tol, atol=tol * phi0,
                    dense_output=True, t_eval=t_eval, events=collapse)
    if sol.status != 0:
        raise CollisionApproachError("Гомотетическое движение дошло до полного столкновения", *_last_state(sol))
    return sol


def energy(U: Potential, x: Configuration, v: Configuration) -> float:
    """½‖v‖² - U(x)."""
    return 0.5 * mass_inner(v, v) - value(U, x)


def angular_momentum(x: Configuration, v: Configuration) -> float:
    """Σ m_i (r_i × v_i) для плоских конфигураций."""
    p, q = x.points, v.points
    return float(np.sum(x.system.mass_array * (p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0])))


def integrate_newton(
    U: Potential,
    x0: Configuration,
    v0: Configuration,
    t_span: Tuple[float, float],
    tol: Optional[float] = None,
    t_eval: Optional[Sequence[float]] = None,
) -> Trajectory:
    """x'' = ∇U(x) методом DOP853 с плотным выводом; сближение тел — CollisionApproachError."""
    tol = settings.integrator_tol if tol is None else tol
    check_collisions(x0)
    system = U.system
    n, d = system.n_bodies, system.dim
    masses = system.mass_array
    scale = max(x0.norm() / math.sqrt(system.total_mass), np.finfo(float).tiny)
    radius = APPROACH_RADIUS * scale

    def rhs(_t, y):
        acc = gradient_array(masses, y[: n * d].reshape(n, d), U.kappa)
        return np.concatenate([y[n * d:], acc.reshape(-1)])

    def approach(_t, y):
        _, dist = pair_geometry(y[: n * d].reshape(n, d))
        return float(np.min(dist[np.triu_indices(n, k=1)])) - radius

    approach.terminal = True
    y0 = np.concatenate([x0.coords, v0.coords])
    logger.debug("Интегрирование x'' = ∇U(x) на [%g, %g], tol = %.1e", t_span[0], t_span[1], tol)
    sol = solve_ivp(rhs, t_span, y0, method="DOP853", rtol=tol, atol=tol * scale,
                    dense_output=True, t_eval=t_eval, events=approach)
    if sol.status != 0:
        t_last, last = _last_state(sol)
        raise CollisionApproachError(f"Интегрирование остановлено при t = {t_last:.6g}: {sol.message}", t_last, last)
    return Trajectory(potential=U, t=np.asarray(sol.t), states=np.asarray(sol.y).T, solution=sol.sol)
