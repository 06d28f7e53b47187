"""Relocation scans: the global search layer.

A local solve that stalls leaves some spheres carrying most of the overlap
energy. The search picks the i lowest-energy spheres, then the j
highest-energy spheres within that set, reflects them through the container
center, and relaxes again. Scanning all (i, j) pairs gives n(n-1)/2 candidate
restarts per round; the point reflection preserves the container and tends to
move crowded spheres into sparse regions.

Subsets and their complements give congruent (point-reflected) candidates
with equal energy, which is why j only runs below i: half the pairs cover all
distinct restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .energy import total_energy
from .geometry import (
    FAKE_RADIUS,
    Configuration,
    Container,
    invert_subset,
    random_configuration,
)
from .local_solver import DEFAULT_SETTINGS, LocalResult, SolverSettings, a0_solve

DEFAULT_SCAN_LIMIT = 6


def min_u(i: int, indices: Sequence[int], per_sphere: np.ndarray) -> tuple[int, ...]:
    """The i members of `indices` with the smallest per-sphere energies.

    Ties break toward the lower sphere index so the result is stable.
    """
    idx = np.asarray(indices, dtype=np.int64)
    if not 1 <= i <= idx.size:
        raise ValueError(f"subset size {i} out of range for {idx.size} indices")
    u = np.asarray(per_sphere, dtype=np.float64)[idx]
    order = np.lexsort((idx, u))
    chosen = idx[order[:i]]
    chosen.sort()
    return tuple(int(k) for k in chosen)


def max_u(j: int, indices: Sequence[int], per_sphere: np.ndarray) -> tuple[int, ...]:
    """The j members of `indices` with the largest per-sphere energies.

    Ties break toward the lower sphere index.
    """
    idx = np.asarray(indices, dtype=np.int64)
    if not 1 <= j <= idx.size:
        raise ValueError(f"subset size {j} out of range for {idx.size} indices")
    u = np.asarray(per_sphere, dtype=np.float64)[idx]
    order = np.lexsort((idx, -u))
    chosen = idx[order[:j]]
    chosen.sort()
    return tuple(int(k) for k in chosen)


@dataclass(frozen=True)
class ScanCandidate:
    """One relocation move: invert `subset`, built from sizes (i, j).

    i is the size of the low-energy pool, j < i the number of high-energy
    spheres drawn from it. Sizes follow the 1-based counting convention, so
    i runs over 2..n and j over 1..i-1.
    """

    i: int
    j: int
    subset: tuple[int, ...]


def scan_candidates(x_local: Configuration, container: Container) -> list[ScanCandidate]:
    """All n(n-1)/2 relocation candidates for one scan, in (i, j) order.

    Per-sphere energies are computed once from x_local and reused for every
    selection. Returns an empty list for n < 2.
    """
    n = x_local.n
    if n < 2:
        return []
    per_sphere = total_energy(x_local, container).per_sphere
    everyone = np.arange(n, dtype=np.int64)
    out = []
    for i in range(2, n + 1):
        pool = min_u(i, everyone, per_sphere)
        for j in range(1, i):
            out.append(ScanCandidate(i=i, j=j, subset=max_u(j, pool, per_sphere)))
    return out


@dataclass(frozen=True)
class SearchState:
    """Where a search ended up.

    best_found is the lowest-energy configuration ever seen, including the
    initial solve. packed is set as soon as any local solve certifies
    (energy under the success threshold), and the search stops there.
    """

    current_local: Configuration
    best_found: Configuration
    best_energy: float
    scan_count: int
    packed: Optional[Configuration]
    local_solves: int = 0
    # best energy per scan, terminating partial scan included
    scan_energies: tuple = ()

    @property
    def succeeded(self) -> bool:
        return self.packed is not None


def a1_search(n: int, container_kind: str, r0_estimate: float, seed: int,
              scan_limit: int = DEFAULT_SCAN_LIMIT,
              settings: SolverSettings = DEFAULT_SETTINGS) -> SearchState:
    """Search for a packing of n fake spheres (r = 0.5 + 1e-8) in the container.

    Starts from a seeded random configuration, relaxes it, and if that is not
    already a packing runs up to scan_limit relocation scans. The first
    candidate that packs ends the whole search; otherwise each scan restarts
    from its own lowest-energy survivor. Deterministic for fixed arguments.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not r0_estimate > 0.0:
        raise ValueError("r0_estimate must be positive")
    container = Container(container_kind, r0_estimate)
    r = FAKE_RADIUS

    start = random_configuration(n, container, r, seed)
    result = a0_solve(start, container, settings)
    solves = 1
    best = result.configuration
    best_energy = result.final_energy
    if result.packed:
        return SearchState(result.configuration, best, best_energy, 0,
                           result.configuration, solves)

    x_local = result.configuration
    scans = 0
    history: list[float] = []
    # single sphere: no subsets to invert, scanning cannot help
    if n >= 2:
        while scans < scan_limit:
            scans += 1
            scan_best: Optional[LocalResult] = None
            for cand in scan_candidates(x_local, container):
                trial = invert_subset(cand.subset, x_local)
                res = a0_solve(trial, container, settings)
                solves += 1
                if res.final_energy < best_energy:
                    best = res.configuration
                    best_energy = res.final_energy
                if res.packed:
                    history.append(res.final_energy)
                    return SearchState(res.configuration, best, best_energy,
                                       scans, res.configuration, solves,
                                       tuple(history))
                if scan_best is None or res.final_energy < scan_best.final_energy:
                    scan_best = res
            assert scan_best is not None
            x_local = scan_best.configuration
            history.append(scan_best.final_energy)

    return SearchState(x_local, best, best_energy, scans, None, solves,
                       tuple(history))
