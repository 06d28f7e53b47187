"""Shrink the container around a found configuration by binary search.

Given a configuration that packs somewhere between half and twice the
starting radius, the search halves that bracket until it is narrower than
epsilon. Probes start warm: each carries the previous halt forward, except
that a crushed halt (a failure with large residual energy) is replaced by
the latest certified packing so the measurement stays pinned to one
arrangement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .geometry import STANDARD_RADIUS, Configuration, Container
from .local_solver import DEFAULT_SETTINGS, SolverSettings, a0_solve
from .relocation import DEFAULT_SCAN_LIMIT, SearchState, a1_search

DEFAULT_EPSILON = 1e-12
MAX_UPPER_BOUND_RETRIES = 8
# A failed probe whose residual energy stays below this carried its input
# geometry through nearly intact; its halt warm-starts the next probe.
# Anything above it was crushed, and crushed halts are discarded.
CARRY_ENERGY_MAX = 1e-10


class UpperBoundInfeasible(RuntimeError):
    """Doubling the start radius did not yield a packable container."""

    def __init__(self, r0_up: float, final_energy: float):
        super().__init__(
            f"configuration does not pack even at container radius {r0_up:g} "
            f"(residual energy {final_energy:.3e})")
        self.r0_up = r0_up
        self.final_energy = final_energy


@dataclass(frozen=True)
class SolveOutcome:
    """A certified dense packing plus how we got there."""

    dense_packing: Configuration
    r0_min: float
    ratio: float
    container_kind: str
    search_iterations: int
    run_metadata: dict


def binary_search_radius(x_found: Configuration, container_kind: str,
                         r0_start: float, epsilon: float = DEFAULT_EPSILON,
                         settings: SolverSettings = DEFAULT_SETTINGS) -> SolveOutcome:
    """Find the smallest container radius at which x_found relaxes into a packing.

    Brackets with [r0_start/2, 2*r0_start]. The upper bound is checked first;
    if even the doubled container cannot be packed from x_found the search
    raises UpperBoundInfeasible rather than returning a bogus bracket. The
    returned packing is emitted at the standard radius 0.5.
    """
    if not r0_start > 0.0:
        raise ValueError("r0_start must be positive")
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    r = x_found.radius
    r0_low = 0.5 * r0_start
    r0_up = 2.0 * r0_start

    check = a0_solve(x_found, Container(container_kind, r0_up), settings)
    if not check.packed:
        raise UpperBoundInfeasible(r0_up, check.final_energy)

    # Two configurations travel through the loop. x_certified is the latest
    # probe result that actually packed, always feasible at the current
    # r0_up. x is the warm start for the next probe: it keeps the halt of a
    # near-miss failure, because a barely-infeasible relaxation has dragged
    # the geometry closer to its tight limit and that progress is worth
    # keeping, but a crushed halt is discarded since relaxing the wreck at
    # the next radius can wander into a different, sparser arrangement.
    x_certified = check.configuration
    x = x_certified
    probes = 0
    while r0_up - r0_low > epsilon:
        assert r0_low < r0_up
        r0 = 0.5 * (r0_up + r0_low)
        result = a0_solve(x, Container(container_kind, r0), settings)
        probes += 1
        if result.packed:
            r0_up = r0
            x_certified = result.configuration
            x = x_certified
        else:
            r0_low = r0
            if result.final_energy < CARRY_ENERGY_MAX:
                x = result.configuration

    r0_min = r0_up
    # Final relaxation at the measured radius. When the last carried halt
    # came from a failed probe it is often a hair tighter than the last
    # certified packing; adopt it only if it truly packs at r0_min.
    final = a0_solve(x, Container(container_kind, r0_min), settings)
    x_dense = final.configuration if final.packed else x_certified
    ratio = STANDARD_RADIUS / r0_min
    return SolveOutcome(
        dense_packing=x_dense.with_radius(STANDARD_RADIUS),
        r0_min=r0_min,
        ratio=ratio,
        container_kind=container_kind,
        search_iterations=probes,
        run_metadata={},
    )


def solve_instance(n: int, container_kind: str, r0_estimate: float, seed: int,
                   scan_limit: int = DEFAULT_SCAN_LIMIT,
                   epsilon: float = DEFAULT_EPSILON,
                   settings: SolverSettings | None = None) -> SolveOutcome:
    """One full run: global search at the estimate, then radius minimization.

    The configuration handed to the binary search is the packed one when the
    search found a packing, otherwise the lowest-energy configuration seen.
    An infeasible upper bound doubles the starting radius and retries, at
    most MAX_UPPER_BOUND_RETRIES times.

    When no settings are given the run uses an exploration profile whose
    starting step is half the estimated radius. The large first kicks let
    the relaxation hop between arrangements before committing to one, which
    raises the odds of landing in a dense basin; pass explicit settings to
    override.
    """
    t0 = time.perf_counter()
    r0_start = r0_estimate
    retries = 0
    while True:
        # A hopeless estimate (too small to even hold one sphere) leaves the
        # search wedged in a zero-gradient pileup, so each retry restarts
        # the whole search at the doubled radius, not just the bracket.
        run_settings = settings
        if run_settings is None:
            run_settings = SolverSettings(initial_step=0.5 * r0_start)
        state: SearchState = a1_search(n, container_kind, r0_start, seed,
                                       scan_limit, run_settings)
        x_found = state.packed if state.packed is not None else state.best_found
        try:
            outcome = binary_search_radius(x_found, container_kind, r0_start,
                                           epsilon, run_settings)
            break
        except UpperBoundInfeasible:
            if retries >= MAX_UPPER_BOUND_RETRIES:
                raise
            retries += 1
            r0_start *= 2.0

    meta = dict(outcome.run_metadata)
    meta.update(
        seed=seed,
        n=n,
        r0_estimate=r0_estimate,
        scan_count=state.scan_count,
        scan_energies=list(state.scan_energies),
        local_solves=state.local_solves,
        packed_in_search=state.packed is not None,
        search_best_energy=state.best_energy,
        upper_bound_retries=retries,
        wall_clock_seconds=time.perf_counter() - t0,
    )
    return SolveOutcome(
        dense_packing=outcome.dense_packing,
        r0_min=outcome.r0_min,
        ratio=outcome.ratio,
        container_kind=outcome.container_kind,
        search_iterations=outcome.search_iterations,
        run_metadata=meta,
    )
