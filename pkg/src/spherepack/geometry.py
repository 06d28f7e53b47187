"""Configurations, containers, and the center-inversion primitive."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

SPHERE = "sphere"
CUBE = "cube"
KINDS = (SPHERE, CUBE)

#: Standard sphere radius used for all published ratios.
STANDARD_RADIUS = 0.5
#: Inflated radius solved with internally, so that a near-zero energy at this
#: radius certifies an exactly feasible packing at STANDARD_RADIUS.
FAKE_RADIUS = 0.5 + 1e-8


@dataclass(frozen=True)
class Container:
    """Centered container: a sphere of radius r0, or a cube of half-edge r0."""

    kind: str
    r0: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown container kind {self.kind!r}")
        if not (self.r0 > 0.0 and np.isfinite(self.r0)):
            raise ValueError(f"container r0 must be positive, got {self.r0}")

    @classmethod
    def sphere(cls, r0: float) -> "Container":
        return cls(SPHERE, float(r0))

    @classmethod
    def cube(cls, r0: float) -> "Container":
        return cls(CUBE, float(r0))


@dataclass(frozen=True)
class Configuration:
    """Ordered centers of n equal spheres of a common radius.

    Sphere index is significant and stable across every operation. The
    centers array is stored read-only; operations return new instances.
    """

    centers: np.ndarray
    radius: float

    def __post_init__(self):
        arr = np.array(self.centers, dtype=np.float64, order="C", copy=True)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 1:
            raise ValueError(f"centers must have shape (n, 3) with n >= 1, got {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("centers must be finite")
        if not (self.radius > 0.0 and np.isfinite(self.radius)):
            raise ValueError(f"sphere radius must be positive, got {self.radius}")
        arr.setflags(write=False)
        object.__setattr__(self, "centers", arr)

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    def with_radius(self, radius: float) -> "Configuration":
        return Configuration(self.centers, radius)


def _validate_indices(indices: Iterable[int], n: int) -> frozenset:
    subset = frozenset(int(i) for i in indices)
    for i in subset:
        if not 0 <= i < n:
            raise IndexError(f"sphere index {i} out of range for n={n}")
    return subset


def random_configuration(n: int, container: Container, radius: float, seed: int) -> Configuration:
    """Sample n centers independently and uniformly from the container shrunk
    inward by the sphere radius.

    Wall containment therefore holds from the start; mutual overlaps are left
    for the local solver to resolve. Deterministic for a given seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not radius > 0.0:
        raise ValueError(f"sphere radius must be positive, got {radius}")
    a = max(container.r0 - radius, 0.0)
    rng = np.random.Generator(np.random.Philox(seed))
    if a == 0.0:
        return Configuration(np.zeros((n, 3)), radius)
    if container.kind == CUBE:
        pts = rng.uniform(-a, a, size=(n, 3))
        return Configuration(pts, radius)
    # Ball: rejection sampling from the bounding cube keeps the law exactly
    # uniform and the draw order deterministic.
    out = np.empty((n, 3))
    filled = 0
    while filled < n:
        cand = rng.uniform(-a, a, size=(2 * (n - filled), 3))
        keep = cand[np.einsum("ij,ij->i", cand, cand) <= a * a]
        take = min(len(keep), n - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return Configuration(out, radius)


def invert_subset(indices: Iterable[int], config: Configuration) -> Configuration:
    """Map every center with index in the subset to its point reflection
    through the container center, (x, y, z) -> (-x, -y, -z).

    Exact involution: applying the same subset twice restores the input
    bitwise. The input configuration is not mutated.
    """
    subset = _validate_indices(indices, config.n)
    centers = config.centers.copy()
    if subset:
        idx = np.fromiter(subset, dtype=np.intp)
        centers[idx] = -centers[idx]
    return Configuration(centers, config.radius)


def complement(indices: Iterable[int], n: int) -> frozenset:
    """The remaining sphere indices: [0, n) minus the given subset."""
    subset = _validate_indices(indices, n)
    return frozenset(range(n)) - subset
