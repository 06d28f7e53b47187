import numpy as np
import pytest

from spherepack.energy import total_energy
from spherepack.geometry import (
    CUBE,
    FAKE_RADIUS,
    SPHERE,
    Configuration,
    Container,
    complement,
    invert_subset,
    random_configuration,
)
from spherepack.relocation import (
    DEFAULT_SCAN_LIMIT,
    ScanCandidate,
    a1_search,
    max_u,
    min_u,
    scan_candidates,
)


def test_min_u_picks_smallest_energies():
    u = np.array([3.0, 1.0, 2.0])
    assert min_u(2, range(3), u) == (1, 2)


def test_min_u_whole_set():
    u = np.array([3.0, 1.0, 2.0])
    assert min_u(3, range(3), u) == (0, 1, 2)


def test_min_u_tie_breaks_by_ascending_index():
    u = np.array([5.0, 5.0, 5.0, 5.0])
    assert min_u(2, range(4), u) == (0, 1)


def test_max_u_picks_largest_energy_within_subset():
    u = np.array([3.0, 1.0, 2.0])
    assert max_u(1, [1, 2], u) == (2,)


def test_max_u_whole_subset_and_ties():
    u = np.array([7.0, 7.0, 7.0])
    assert max_u(3, range(3), u) == (0, 1, 2)
    assert max_u(1, [1, 2], u) == (1,)


def test_selection_size_out_of_range():
    u = np.array([1.0, 2.0])
    with pytest.raises(ValueError):
        min_u(3, range(2), u)
    with pytest.raises(ValueError):
        max_u(0, range(2), u)


def test_scan_candidates_n3_order():
    config = random_configuration(3, Container(SPHERE, 0.8), FAKE_RADIUS, seed=1)
    cands = scan_candidates(config, Container(SPHERE, 0.8))
    assert [(c.i, c.j) for c in cands] == [(2, 1), (3, 1), (3, 2)]


def test_scan_candidates_n2_inverts_higher_energy_sphere():
    config = Configuration(np.array([[0.05, 0, 0], [0.4, 0, 0]]), FAKE_RADIUS)
    container = Container(SPHERE, 0.7)
    report = total_energy(config, container)
    cands = scan_candidates(config, container)
    assert len(cands) == 1
    worse = int(np.argmax(report.per_sphere))
    assert cands[0].subset == (worse,)


def test_scan_candidates_count_and_uniqueness():
    config = random_configuration(10, Container(CUBE, 0.8), FAKE_RADIUS, seed=3)
    cands = scan_candidates(config, Container(CUBE, 0.8))
    assert len(cands) == 45
    assert len({(c.i, c.j) for c in cands}) == 45


def test_scan_candidate_subsets_match_their_selectors():
    container = Container(SPHERE, 0.85)
    config = random_configuration(7, container, FAKE_RADIUS, seed=9)
    per_sphere = total_energy(config, container).per_sphere
    for cand in scan_candidates(config, container):
        assert isinstance(cand, ScanCandidate)
        assert len(cand.subset) == cand.j
        pool = min_u(cand.i, range(7), per_sphere)
        assert cand.subset == max_u(cand.j, pool, per_sphere)


def test_scan_candidates_empty_below_two_spheres():
    config = random_configuration(1, Container(SPHERE, 1.0), FAKE_RADIUS, seed=0)
    assert len(scan_candidates(config, Container(SPHERE, 1.0))) == 0


def test_complement_symmetry_of_inverted_energies():
    """Inverting a subset or its complement gives the same energy.

    The two results are global point reflections of each other, and both
    containers are centrally symmetric.
    """
    rng = np.random.Generator(np.random.Philox(123))
    for trial in range(100):
        n = int(rng.integers(2, 12))
        kind = SPHERE if trial % 2 == 0 else CUBE
        container = Container(kind, 0.9)
        config = random_configuration(n, container, FAKE_RADIUS, seed=trial)
        k = int(rng.integers(0, n + 1))
        subset = frozenset(int(v) for v in rng.choice(n, size=k, replace=False))
        a = total_energy(invert_subset(subset, config), container).total
        b = total_energy(invert_subset(complement(subset, n), config),
                         container).total
        assert b == pytest.approx(a, rel=1e-12, abs=1e-300)


def test_search_single_sphere_short_circuits():
    state = a1_search(1, SPHERE, r0_estimate=1.0, seed=0)
    assert state.packed is not None
    assert state.scan_count == 0


def test_search_generous_container_packs_immediately():
    state = a1_search(2, SPHERE, r0_estimate=1.01, seed=0)
    assert state.packed is not None
    assert state.scan_count == 0


def test_search_is_deterministic():
    a = a1_search(6, CUBE, r0_estimate=0.65, seed=11)
    b = a1_search(6, CUBE, r0_estimate=0.65, seed=11)
    assert a.scan_count == b.scan_count
    assert a.best_energy == b.best_energy
    assert np.array_equal(a.best_found.centers, b.best_found.centers)
    assert a.scan_energies == b.scan_energies


def test_search_respects_scan_limit_when_crushed():
    # far too small a container: every scan fails, limit must hold
    state = a1_search(6, SPHERE, r0_estimate=0.7, seed=2, scan_limit=3)
    assert state.packed is None
    assert state.scan_count == 3
    assert len(state.scan_energies) == 3


def test_search_best_energy_never_increases_across_scans():
    state = a1_search(6, SPHERE, r0_estimate=0.7, seed=2, scan_limit=4)
    running = float("inf")
    for e in state.scan_energies:
        running = min(running, e)
        assert state.best_energy <= running or state.best_energy == running
    assert state.best_energy == min(state.scan_energies)


def test_search_best_found_matches_best_energy():
    from spherepack.energy import energy_value

    state = a1_search(5, SPHERE, r0_estimate=0.75, seed=4, scan_limit=2)
    got = energy_value(state.best_found, Container(SPHERE, 0.75))
    assert got == state.best_energy


def test_thirteen_spheres_near_record_estimate_mostly_pack():
    hits = sum(
        a1_search(13, SPHERE, r0_estimate=0.5 / 0.3330, seed=s).packed is not None
        for s in range(5))
    assert hits >= 4


def test_default_scan_limit_is_six():
    assert DEFAULT_SCAN_LIMIT == 6
