import numpy as np
import pytest

from spherepack.energy import energy_value, total_energy
from spherepack.geometry import (
    CUBE,
    FAKE_RADIUS,
    SPHERE,
    Configuration,
    Container,
    random_configuration,
)
from spherepack.local_solver import (
    DEFAULT_SETTINGS,
    LocalResult,
    SolveStatus,
    SolverSettings,
    a0_solve,
)
from spherepack.verification import verify_exact


def test_settings_defaults():
    s = SolverSettings()
    assert s.success_threshold == 1e-16
    assert s.max_iterations == 2_000_000
    assert s.stall_gradient_norm == 1e-14
    assert s.initial_step is None
    assert s.step_shrink == 0.5
    assert s.step_grow == 1.2


def test_settings_validation():
    with pytest.raises(ValueError):
        SolverSettings(success_threshold=0.0)
    with pytest.raises(ValueError):
        SolverSettings(step_shrink=1.0)
    with pytest.raises(ValueError):
        SolverSettings(step_grow=0.9)
    with pytest.raises(ValueError):
        SolverSettings(max_iterations=0)


def test_effective_iteration_budget_scales_with_n():
    s = SolverSettings()
    assert s.effective_max_iterations(10) == 2_000_000
    assert s.effective_max_iterations(50) == 10_000_000
    assert s.effective_max_iterations(1) == 2_000_000


def test_already_packed_returns_input_unchanged():
    config = Configuration(np.array([[-0.5, 0, 0], [0.5, 0, 0]]), 0.5)
    result = a0_solve(config, Container(SPHERE, 1.5), DEFAULT_SETTINGS)
    assert result.status is SolveStatus.PACKED
    assert result.iterations == 0
    assert result.packed
    assert np.array_equal(result.configuration.centers, config.centers)


def test_two_overlapping_spheres_separate_along_axis():
    config = Configuration(np.array([[-0.2, 0, 0], [0.2, 0, 0]]), 0.5)
    result = a0_solve(config, Container(SPHERE, 5.0), DEFAULT_SETTINGS)
    assert result.status is SolveStatus.PACKED
    a, b = result.configuration.centers
    assert np.linalg.norm(a - b) >= 1.0
    # symmetric 1-D problem stays on the x-axis
    assert abs(a[1]) < 1e-9 and abs(a[2]) < 1e-9


@pytest.mark.parametrize("kind", [SPHERE, CUBE])
def test_energy_never_increases(kind):
    for seed in range(5):
        container = Container(kind, 0.9)
        config = random_configuration(8, container, FAKE_RADIUS, seed=seed)
        before = energy_value(config, container)
        result = a0_solve(config, container, DEFAULT_SETTINGS)
        assert result.final_energy <= before
        assert result.final_energy >= 0.0


def test_result_energy_matches_reported_configuration():
    container = Container(SPHERE, 1.0)
    config = random_configuration(6, container, FAKE_RADIUS, seed=2)
    result = a0_solve(config, container, DEFAULT_SETTINGS)
    recomputed = energy_value(result.configuration, container)
    assert result.final_energy == recomputed


def test_solve_is_bitwise_deterministic():
    container = Container(CUBE, 0.95)
    config = random_configuration(9, container, FAKE_RADIUS, seed=5)
    r1 = a0_solve(config, container, DEFAULT_SETTINGS)
    r2 = a0_solve(config, container, DEFAULT_SETTINGS)
    assert r1.final_energy == r2.final_energy
    assert r1.iterations == r2.iterations
    assert r1.status == r2.status
    assert np.array_equal(r1.configuration.centers, r2.configuration.centers)


def test_coincident_centers_stall_with_zero_gradient():
    # both deformation terms sit exactly on their kinks: subgradient zero
    config = Configuration(np.zeros((2, 3)), 0.5)
    result = a0_solve(config, Container(SPHERE, 0.4), DEFAULT_SETTINGS)
    assert result.status is SolveStatus.STALLED
    assert not result.packed


def test_crushed_instance_does_not_pack():
    # five unit spheres cannot fit a container barely larger than one
    container = Container(SPHERE, 0.6)
    config = random_configuration(5, container, 0.5, seed=8)
    result = a0_solve(config, container, DEFAULT_SETTINGS)
    assert result.status in (SolveStatus.STALLED, SolveStatus.ITERATION_LIMIT)
    assert result.final_energy > DEFAULT_SETTINGS.success_threshold


def test_packed_at_inflated_radius_is_exact_at_standard_radius():
    """Success at radius 0.5+1e-8 certifies exact feasibility at 0.5."""
    for seed in range(5):
        container = Container(SPHERE, 1.6)
        config = random_configuration(7, container, FAKE_RADIUS, seed=seed)
        result = a0_solve(config, container, DEFAULT_SETTINGS)
        assert result.status is SolveStatus.PACKED
        cert = verify_exact(result.configuration.with_radius(0.5),
                            container.r0, container.kind)
        assert cert.valid


def test_thirteen_spheres_pack_near_their_tight_radius():
    from spherepack.radius_search import solve_instance

    outcome = solve_instance(13, SPHERE, r0_estimate=0.5 / 0.333, seed=0)
    rng = np.random.Generator(np.random.Philox(77))
    jiggled = Configuration(
        outcome.dense_packing.centers + rng.normal(scale=1e-3, size=(13, 3)),
        FAKE_RADIUS)
    result = a0_solve(jiggled, Container(SPHERE, 0.5 / 0.33333),
                      DEFAULT_SETTINGS)
    assert result.status is SolveStatus.PACKED


def test_explicit_initial_step_is_honored():
    container = Container(SPHERE, 1.0)
    config = random_configuration(6, container, FAKE_RADIUS, seed=4)
    small = a0_solve(config, container, SolverSettings(initial_step=1e-4))
    big = a0_solve(config, container, SolverSettings(initial_step=0.5))
    assert isinstance(small, LocalResult) and isinstance(big, LocalResult)
    # different step schedules land on different halts
    assert (small.iterations != big.iterations
            or not np.array_equal(small.configuration.centers,
                                  big.configuration.centers))
