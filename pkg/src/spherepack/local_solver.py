"""The deterministic local solver: drive the overlap energy toward zero.

The solver simulates elastic relaxation by inertial descent: velocity
accumulates the downhill force and is steered toward it, and any move that
fails to lower the energy zeroes the velocity and shrinks the step, so
accepted energies decrease monotonically. The step grows again on sustained
progress. A solve succeeds once the energy falls below the success threshold
(1e-16 by default, which certifies an exact packing when solving with the
inflated radius).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .geometry import CUBE, Configuration, Container


class SolveStatus(enum.Enum):
    PACKED = "packed"
    STALLED = "stalled"
    ITERATION_LIMIT = "iteration_limit"


_STATUS_FROM_CODE = {
    _kernels.STATUS_PACKED: SolveStatus.PACKED,
    _kernels.STATUS_STALLED: SolveStatus.STALLED,
    _kernels.STATUS_ITERATION_LIMIT: SolveStatus.ITERATION_LIMIT,
}


@dataclass(frozen=True)
class SolverSettings:
    """Knobs for the descent loop.

    initial_step is the integrator's step parameter; None resolves to
    0.01 * r0 at solve time. Larger values make the early phase hop between
    arrangements before settling, which is useful for global search.
    max_iterations is a base budget: the effective limit scales with n (times
    n/10, floored at the base) so large instances are not starved.
    """

    success_threshold: float = 1e-16
    max_iterations: int = 2_000_000
    stall_gradient_norm: float = 1e-14
    initial_step: float | None = None
    step_shrink: float = 0.5
    step_grow: float = 1.2

    def __post_init__(self):
        if not self.success_threshold > 0.0:
            raise ValueError("success_threshold must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.stall_gradient_norm >= 0.0:
            raise ValueError("stall_gradient_norm must be nonnegative")
        if self.initial_step is not None and not self.initial_step > 0.0:
            raise ValueError("initial_step must be positive when given")
        if not 0.0 < self.step_shrink < 1.0 < self.step_grow:
            raise ValueError("need 0 < step_shrink < 1 < step_grow")

    def effective_max_iterations(self, n: int) -> int:
        return max(self.max_iterations, self.max_iterations * n // 10)


DEFAULT_SETTINGS = SolverSettings()


@dataclass(frozen=True)
class LocalResult:
    """Halt state of one local solve."""

    configuration: Configuration
    final_energy: float
    iterations: int
    status: SolveStatus

    @property
    def packed(self) -> bool:
        return self.status is SolveStatus.PACKED


def a0_solve(config: Configuration, container: Container,
             settings: SolverSettings = DEFAULT_SETTINGS) -> LocalResult:
    """Relax a configuration inside the container by monotone energy descent.

    Deterministic: identical inputs give a bitwise-identical result. The
    returned energy never exceeds the input energy. Status is PACKED when the
    energy fell below the success threshold, STALLED when the gradient norm
    fell below the stall tolerance (or no representable progress was left)
    with the energy still above threshold, ITERATION_LIMIT otherwise.
    """
    dt0 = settings.initial_step
    if dt0 is None:
        dt0 = 0.01 * container.r0
    kind_code = _kernels.KIND_CUBE if container.kind == CUBE else _kernels.KIND_SPHERE
    use_grid = config.n >= _kernels.GRID_MIN_SPHERES
    work = config.centers.copy()
    out, energy, iters, code = _kernels.descend(
        work, config.radius, container.r0, kind_code, use_grid,
        settings.success_threshold, settings.effective_max_iterations(config.n),
        settings.stall_gradient_norm, dt0, settings.step_shrink, settings.step_grow,
    )
    return LocalResult(
        configuration=Configuration(out, config.radius),
        final_energy=float(energy),
        iterations=int(iters),
        status=_STATUS_FROM_CODE[int(code)],
    )
