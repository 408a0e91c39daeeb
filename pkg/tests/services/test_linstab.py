"""Тесты уравнения Якоби, монодромии и классификации мультипликаторов."""
import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.linalg import block_diag

from src.errors import HypothesisError, InvalidInputError
from src.models.central import ROUTH_MU_THRESHOLD
from src.models.potential import Potential
from src.models.stability import FloquetClass, Verdict
from src.models.system import MassSystem
from src.services.central import central_configuration
from src.services.configurations import isosceles_triangle
from src.services.lagrange import lagrange_configuration, mu_to_masses
from src.services.linstab import (
    block_matrix,
    block_matrix_function,
    classify_motion,
    classify_multipliers,
    comparison_theorem_check,
    forced_multiplier_count,
    full_decoupling_check,
    jacobi_integrate,
    keplerian_lower_bound,
    linearized_system,
    monodromy,
    richardson_check,
    splitting_verify,
    stability_transition,
)
from src.services.mass_metric import (
    build_subspaces,
    centered_subspace,
    coplanar_subspace,
    direct_sum,
    full_subspace,
    isosceles_subspace,
    make_subspace,
    normalized,
)
from src.services.orbits import homographic_motion, homographic_state, integrate_newton
from src.services.potential import gradient, hessian


def _rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _circular(mu, e=0.0):
    return homographic_motion(lagrange_configuration(mu_to_masses(mu)), e)


def test_forced_counts(lagrange_equal):
    Delta, K, D = build_subspaces(lagrange_equal.config)
    system = lagrange_equal.system
    assert forced_multiplier_count(Delta) == 4
    assert forced_multiplier_count(K) == 4
    assert forced_multiplier_count(D) == 0
    assert forced_multiplier_count(centered_subspace(system)) == 4
    assert forced_multiplier_count(full_subspace(system)) == 8


def test_classify_synthetic_matrices():
    _, cls, _, stable, unstable, center = classify_multipliers(np.diag([2.0, 0.5]), 0, 1e-6)
    assert cls == FloquetClass.HYPERBOLIC and (stable, unstable, center) == (1, 1, 0)

    _, cls, _, _, _, center = classify_multipliers(_rotation(0.3), 0, 1e-6)
    assert cls == FloquetClass.ELLIPTIC and center == 2

    _, cls, *_ = classify_multipliers(block_diag(_rotation(0.3), np.diag([2.0, 0.5])), 0, 1e-6)
    assert cls == FloquetClass.MIXED

    assert classify_multipliers(np.eye(2), 0, 1e-6)[1] == FloquetClass.DEGENERATE
    assert classify_multipliers(np.eye(2), 2, 1e-6)[1] == FloquetClass.ELLIPTIC

    R = _rotation(1.0)
    jordan = np.block([[R, np.eye(2)], [np.zeros((2, 2)), R]])
    assert classify_multipliers(jordan, 0, 1e-6)[1] == FloquetClass.DEGENERATE


def test_forced_multipliers_must_sit_at_one():
    assert classify_multipliers(np.diag([1.0, 1.5]), 2, 1e-6)[1] == FloquetClass.DEGENERATE
    assert classify_multipliers(np.diag([1.0, 0.99]), 2, 1e-6)[1] == FloquetClass.DEGENERATE
    # жорданова клетка при 1: расщепление 1 ± 1e-5 допустимо
    jordan = np.array([[1.0, 1.0], [1e-10, 1.0]])
    assert classify_multipliers(jordan, 2, 1e-6)[1] == FloquetClass.ELLIPTIC


def test_delta_block_is_free_motion():
    motion = _circular(5.0, 0.3)
    Delta, K, _ = build_subspaces(motion.x0)
    report = monodromy(motion, Delta)
    k, T = Delta.dim, motion.period
    expected = np.block([[np.eye(k), T * np.eye(k)], [np.zeros((k, k)), np.eye(k)]])
    np.testing.assert_allclose(report.matrix, expected, atol=1e-10 * T)
    assert report.classification == FloquetClass.ELLIPTIC

    similarity = monodromy(motion, K)
    assert similarity.classification == FloquetClass.ELLIPTIC
    assert np.abs(similarity.multipliers - 1.0).max() < 1e-3


@pytest.mark.parametrize("e", [0.0, 0.2, 0.5, 0.8])
@pytest.mark.parametrize("mu", [3.0, 3.2, 3.37])
def test_deformation_block_hyperbolic_below_threshold(mu, e):
    motion = _circular(mu, e)
    _, _, D = build_subspaces(motion.x0)
    report = monodromy(motion, D, tol=1e-12)
    assert report.classification == FloquetClass.HYPERBOLIC
    assert report.min_margin > 1e-4
    assert report.stable_dim == report.unstable_dim == 2


def test_multipliers_are_ordered():
    values, *_ = classify_multipliers(np.diag([3.0, -1.0, 0.5, 2.0]), 0, 1e-6)
    np.testing.assert_allclose(values.real, [-1.0, 0.5, 2.0, 3.0])


def test_analytic_block_matrix_matches_hessian_along_orbit(lagrange_equal):
    motion = homographic_motion(lagrange_equal, 0.4)
    full = full_subspace(motion.system)
    Delta, K, D = build_subspaces(motion.x0)
    for t in (0.0, 0.7, 2.3):
        x, _ = homographic_state(motion, t)
        direct = hessian(motion.potential, x)
        for V in (full, D, K):
            expected = direct.restrict(V)
            np.testing.assert_allclose(block_matrix(motion, V, t), expected, atol=1e-11 * np.abs(expected).max())


def test_trajectory_block_matrix_matches_homographic(lagrange_mu30):
    motion = homographic_motion(lagrange_mu30, 0.1)
    x0, v0 = homographic_state(motion, 0.0)
    trajectory = integrate_newton(motion.potential, x0, v0, (0.0, 1.0))
    _, _, D = build_subspaces(motion.x0)
    analytic, numeric = block_matrix_function(motion, D), block_matrix_function(trajectory, D)
    for t in (0.25, 0.8):
        np.testing.assert_allclose(numeric(t), analytic(t), rtol=1e-7, atol=1e-7 * np.abs(analytic(t)).max())


def test_monodromy_requires_periodic_motion(lagrange_mu30):
    motion = homographic_motion(lagrange_mu30, 0.0)
    x0, v0 = homographic_state(motion, 0.0)
    trajectory = integrate_newton(motion.potential, x0, v0, (0.0, 0.5))
    _, _, D = build_subspaces(motion.x0)
    with pytest.raises(InvalidInputError):
        monodromy(trajectory, D)
    assert not linearized_system(trajectory, D).is_periodic


def test_circular_orbit_above_routh_is_elliptic(circular_mu30):
    _, _, D = build_subspaces(circular_mu30.x0)
    report = monodromy(circular_mu30, D)
    assert report.classification == FloquetClass.ELLIPTIC
    assert report.matrix.shape == (4, 4)
    assert report.pairing_error < 1e-8
    assert report.product_error < 1e-8
    np.testing.assert_allclose(np.abs(report.multipliers), 1.0, atol=1e-8)


def test_circular_orbit_below_routh_is_unstable():
    motion = _circular(20.0)
    _, _, D = build_subspaces(motion.x0)
    report = monodromy(motion, D)
    assert report.classification in (FloquetClass.HYPERBOLIC, FloquetClass.MIXED)
    assert report.min_margin > 0.5
    assert report.unstable_dim >= 1
    assert report.pairing_error < 1e-6
    assert report.product_error < 1e-6


def test_equal_masses_strongly_hyperbolic(lagrange_equal):
    motion = homographic_motion(lagrange_equal, 0.0)
    _, _, D = build_subspaces(motion.x0)
    report = monodromy(motion, D)
    assert report.classification == FloquetClass.HYPERBOLIC
    assert np.abs(report.multipliers).max() > 10.0
    assert report.stable_dim == report.unstable_dim


def test_classify_motion_verdicts(circular_mu30, lagrange_equal):
    stable = classify_motion(circular_mu30)
    assert stable.verdict == Verdict.STABLE
    assert set(stable.blocks) == {"Delta", "K", "D"}
    assert stable.blocks["K"].classification == FloquetClass.ELLIPTIC
    assert stable.blocks["Delta"].forced == 4

    unstable = classify_motion(homographic_motion(lagrange_equal, 0.2))
    assert unstable.verdict == Verdict.UNSTABLE
    assert unstable.to_dict()["verdict"] == "linearly unstable"


def test_empty_block_is_trivially_elliptic():
    system = MassSystem((1.0, 2.0), dim=2)
    x0 = system.from_points([[2.0, 0.0], [-1.0, 0.0]])
    two_body = central_configuration(Potential(system), normalized(x0))
    motion = homographic_motion(two_body, 0.3)
    _, _, D = build_subspaces(motion.x0)
    assert D.dim == 0
    report = monodromy(motion, D)
    assert report.classification == FloquetClass.ELLIPTIC
    assert report.multipliers.size == 0


def test_jacobi_field_must_start_in_block(circular_mu30):
    _, K, D = build_subspaces(circular_mu30.x0)
    with pytest.raises(InvalidInputError):
        jacobi_integrate(circular_mu30, D, K.basis[0], D.basis[0], (0.0, 1.0))


def test_jacobi_field_in_K_is_velocity(lagrange_equal):
    # ẋ(t) — решение уравнения Якоби
    motion = homographic_motion(lagrange_equal, 0.3)
    _, K, _ = build_subspaces(motion.x0)
    _, v0 = homographic_state(motion, 0.0)
    acc0 = gradient(motion.potential, homographic_state(motion, 0.0)[0])
    ts = np.linspace(0.0, motion.period, 7)
    field = jacobi_integrate(motion, K, v0, acc0, (0.0, motion.period), t_eval=ts)
    for k, t in enumerate(ts):
        expected = homographic_state(motion, t)[1]
        assert (field.configuration(k) - expected).norm() < 1e-6 * expected.norm() + 1e-6


def test_splitting_of_canonical_subspaces(lagrange_equal):
    U = lagrange_equal.potential
    x0 = lagrange_equal.config
    _, K, _ = build_subspaces(x0)
    assert splitting_verify(U, x0, K) < 1e-12
    assert splitting_verify(U, x0, centered_subspace(x0.system)) < 1e-12


def test_splitting_of_symmetric_subspaces():
    system = MassSystem((1.0, 1.0, 2.0), dim=3)
    U = Potential(system)
    x = isosceles_triangle(system, height=0.8)
    assert splitting_verify(U, x, isosceles_subspace(system, [0.0, 0.0, 1.0])) < 1e-12
    assert splitting_verify(U, x, coplanar_subspace(system, [0.0, 1.0, 0.0])) < 1e-12
    with pytest.raises(InvalidInputError):
        splitting_verify(U, x, coplanar_subspace(system, [0.0, 0.0, 1.0]))


def _random_member(V, rng, min_distance=0.2):
    """Случайная точка V без близких пар тел."""
    n = V.system.n_bodies
    while True:
        x = V.from_coordinates(rng.standard_normal(V.dim))
        diff = x.points[:, None, :] - x.points[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1)) + np.eye(n)
        if dist.min() >= min_distance * x.norm():
            return x


def _random_coupling(U, x, rng):
    """Связь для случайного трёхмерного V ∋ x, не инвариантного в общем положении."""
    system = x.system
    extra = [system.configuration(rng.standard_normal(system.size)) for _ in range(2)]
    return splitting_verify(U, x, make_subspace([x] + extra, system))


def test_splitting_centered_random_configurations(rng):
    system = MassSystem((1.0, 2.0, 3.0, 0.5), dim=2)
    U = Potential(system)
    V = centered_subspace(system)
    for _ in range(100):
        assert splitting_verify(U, _random_member(V, rng), V) <= 1e-10
    assert _random_coupling(U, _random_member(V, rng), rng) > 1e-3


def test_splitting_coplanar_random_configurations(rng):
    system = MassSystem((1.0, 2.0, 3.0), dim=3)
    U = Potential(system)
    V = coplanar_subspace(system, [0.3, -0.2, 1.0])
    for _ in range(100):
        assert splitting_verify(U, _random_member(V, rng), V) <= 1e-10
    assert _random_coupling(U, _random_member(V, rng), rng) > 1e-3


def test_splitting_isosceles_random_configurations(rng):
    system = MassSystem((1.0, 1.0, 2.5), dim=3)
    U = Potential(system)
    V = isosceles_subspace(system, [0.0, 1.0, 1.0])
    for _ in range(100):
        assert splitting_verify(U, _random_member(V, rng), V) <= 1e-10
    assert _random_coupling(U, _random_member(V, rng), rng) > 1e-3


def test_splitting_similarity_plus_translations_random_masses(rng):
    for _ in range(100):
        cc = lagrange_configuration(tuple(rng.uniform(0.05, 3.0, 3)))
        Delta, K, _ = build_subspaces(cc.config)
        assert splitting_verify(cc.potential, cc.config, direct_sum(Delta, K)) <= 1e-10
    cc = lagrange_configuration(mu_to_masses(5.0))
    assert _random_coupling(cc.potential, cc.config, rng) > 1e-3


def test_comparison_theorem_on_deformation_block(lagrange_equal):
    motion = homographic_motion(lagrange_equal, 0.3)
    _, _, D = build_subspaces(motion.x0)
    alpha = keplerian_lower_bound(motion)
    assert alpha > 0
    t_span = (0.0, 0.5 * motion.period)
    report = comparison_theorem_check(block_matrix_function(motion, D), alpha, t_span, trials=20, seed=7)
    assert report.trials == 20
    assert report.passed
    assert report.min_slack >= -1e-8
    assert report.min_eigenvalue >= alpha * (1 - 1e-12)
    with pytest.raises(HypothesisError):
        comparison_theorem_check(block_matrix_function(motion, D), 10 * alpha, (0.0, 1.0))


def test_comparison_equality_for_constant_block():
    report = comparison_theorem_check(lambda t: 2.0 * np.eye(3), 2.0, (0.0, 1.5), trials=3)
    assert report.passed
    assert report.max_equality_deviation < 1e-10


def test_comparison_strict_for_growing_block():
    alpha = 0.5
    t_span = (0.0, 3.0)
    report = comparison_theorem_check(lambda t: (alpha + np.sin(t) ** 2) * np.eye(2), alpha, t_span, trials=5)
    assert report.passed
    assert report.min_eigenvalue == pytest.approx(alpha)

    # ‖J(t)‖ совпадает со скалярным решением y'' = (α + sin²t) y
    ts = np.linspace(*t_span, 64)
    scalar = solve_ivp(lambda t, y: [y[1], (alpha + np.sin(t) ** 2) * y[0]], t_span, [0.0, 1.0],
                       method="DOP853", rtol=1e-12, atol=1e-12, t_eval=ts)
    bound = np.sinh(np.sqrt(alpha) * ts) / np.sqrt(alpha)
    gap = scalar.y[0] - bound
    assert np.all(gap[1:] > 0)
    assert report.max_equality_deviation == pytest.approx(gap.max(), rel=1e-6)


def test_richardson_stability(circular_mu30):
    _, _, D = build_subspaces(circular_mu30.x0)
    assert richardson_check(circular_mu30, D, tol=1e-10) < 1e-7


def test_full_system_decouples(lagrange_mu30, rng):
    motion = homographic_motion(lagrange_mu30, 0.1)
    system = motion.system
    J0 = system.configuration(rng.standard_normal(system.size))
    Jdot0 = system.configuration(rng.standard_normal(system.size))
    assert full_decoupling_check(motion, J0, Jdot0, samples=8) < 1e-7


def test_stability_transition_near_routh_value():
    result = stability_transition(0.0, 20.0, 30.0, width=1e-2)
    assert abs(result.mu_star - ROUTH_MU_THRESHOLD) < 0.01
    assert result.width <= 1e-2
    assert result.criterion == "monodromy"


def test_hyperbolicity_does_not_depend_on_orbit_size(lagrange_equal):
    _, _, D = build_subspaces(lagrange_equal.config)
    reference = monodromy(homographic_motion(lagrange_equal, 0.1, a=1.0), D)
    for a in (0.5, 2.0):
        scaled = monodromy(homographic_motion(lagrange_equal, 0.1, a=a), D)
        assert scaled.classification == FloquetClass.HYPERBOLIC
        np.testing.assert_allclose(scaled.multipliers, reference.multipliers,
                                   rtol=1e-7, atol=1e-7 * np.abs(reference.multipliers).max())
