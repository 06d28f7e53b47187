"""Deformations, potential energy, and its analytic gradient.

A sphere pressed into the container wall or into another sphere is assigned a
scalar deformation; the potential energy is the sum of all squared
deformations. A configuration is an exact packing if and only if the energy
is zero. Each unordered overlapping pair contributes twice (once per order),
matching the double sum in the energy definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import CUBE, SPHERE, Configuration, Container

_KIND_CODE = {SPHERE: _kernels.KIND_SPHERE, CUBE: _kernels.KIND_CUBE}


@dataclass(frozen=True)
class EnergyReport:
    """Total energy with its per-sphere breakdown and worst deformations."""

    total: float
    per_sphere: np.ndarray
    max_container_deformation: float
    max_pair_deformation: float


def container_deformation(center, radius: float, container: Container) -> float:
    """Overlap depth of one sphere with the container wall.

    Sphere container: max(0, |center| + radius - r0). Cube container: the
    Euclidean norm of the per-axis overflows max(0, |coordinate| + radius - r0),
    so its square is the sum of squared per-axis overflows.
    """
    x, y, z = (float(v) for v in center)
    if container.kind == SPHERE:
        return max(0.0, math.sqrt(x * x + y * y + z * z) + radius - container.r0)
    return math.sqrt(sum(max(0.0, abs(v) + radius - container.r0) ** 2 for v in (x, y, z)))


def pair_deformation(a, b, radius: float) -> float:
    """Half the mutual overlap depth of two spheres: max(0, 2r - |a-b|) / 2."""
    dx = float(a[0]) - float(b[0])
    dy = float(a[1]) - float(b[1])
    dz = float(a[2]) - float(b[2])
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    return 0.5 * max(0.0, 2.0 * radius - dist)


def sphere_energy(i: int, config: Configuration, container: Container) -> float:
    """Potential energy of sphere i: squared wall deformation plus the sum of
    its squared pair deformations against every other sphere."""
    n = config.n
    if not 0 <= i < n:
        raise IndexError(f"sphere index {i} out of range for n={n}")
    centers = config.centers
    u = container_deformation(centers[i], config.radius, container) ** 2
    for j in range(n):
        if j != i:
            u += pair_deformation(centers[i], centers[j], config.radius) ** 2
    return u


def _wall_deformations(centers: np.ndarray, radius: float, container: Container) -> np.ndarray:
    if container.kind == SPHERE:
        norms = np.sqrt(np.einsum("ij,ij->i", centers, centers))
        return np.maximum(0.0, norms + radius - container.r0)
    overflow = np.maximum(0.0, np.abs(centers) + radius - container.r0)
    return np.sqrt(np.einsum("ij,ij->i", overflow, overflow))


def total_energy(config: Configuration, container: Container) -> EnergyReport:
    """Energy report for a configuration: total, per-sphere breakdown, and the
    largest wall/pair deformations.

    The total is an exact sum of the per-sphere energies (fsum), so the
    report is internally consistent to the last bit for any n.
    """
    centers = config.centers
    r = config.radius
    wall = _wall_deformations(centers, r, container)
    diff = centers[:, None, :] - centers[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    pair = 0.5 * np.maximum(0.0, 2.0 * r - dist)
    np.fill_diagonal(pair, 0.0)
    per_sphere = wall ** 2 + (pair ** 2).sum(axis=1)
    per_sphere.setflags(write=False)
    return EnergyReport(
        total=math.fsum(per_sphere),
        per_sphere=per_sphere,
        max_container_deformation=float(wall.max()),
        max_pair_deformation=float(pair.max()) if config.n > 1 else 0.0,
    )


def total_energy_reference(config: Configuration, container: Container) -> float:
    """Naive double-loop energy, summed with fsum. Kept as the independent
    oracle for the fast paths; do not optimize."""
    terms = []
    centers = config.centers
    n = config.n
    for i in range(n):
        terms.append(container_deformation(centers[i], config.radius, container) ** 2)
        for j in range(n):
            if j != i:
                terms.append(pair_deformation(centers[i], centers[j], config.radius) ** 2)
    return math.fsum(terms)


def energy_value(config: Configuration, container: Container, use_grid: bool | None = None) -> float:
    """Total energy through the solver's fused kernel (value only)."""
    grad = np.empty((config.n, 3))
    if use_grid is None:
        use_grid = config.n >= _kernels.GRID_MIN_SPHERES
    return float(
        _kernels.energy_grad(
            config.centers, config.radius, container.r0,
            _KIND_CODE[container.kind], grad, use_grid,
        )
    )


def energy_gradient(config: Configuration, container: Container, use_grid: bool | None = None) -> np.ndarray:
    """Analytic gradient of the total energy, shape (n, 3).

    Row i holds dU/d(x_i, y_i, z_i). At the non-smooth kinks (a deformation
    of exactly zero, or coincident centers) the subgradient 0 is used for
    that term.
    """
    grad = np.empty((config.n, 3))
    if use_grid is None:
        use_grid = config.n >= _kernels.GRID_MIN_SPHERES
    _kernels.energy_grad(
        config.centers, config.radius, container.r0,
        _KIND_CODE[container.kind], grad, use_grid,
    )
    return grad
