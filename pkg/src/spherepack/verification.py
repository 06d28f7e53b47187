"""Feasibility certification with no tolerance slack.

A packing claim here means plain floating-point comparisons succeed at the
standard radius 0.5: every center inside the shrunk container, every pair at
distance 2r or more. Solutions produced at the inflated radius 0.5 + 1e-8
carry margins around 1e-8, so exact comparisons are meaningful: evaluation
rounding is seven orders of magnitude below the margin. The certificate also
records conservatively deflated margins (forward error bound of the distance
evaluation) so a valid verdict does not hinge on rounding direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .energy import total_energy
from .geometry import CUBE, FAKE_RADIUS, Configuration, Container
from .records import NotInTable, RecordTable, bundled_records

_EPS = float(np.finfo(np.float64).eps)
# one rounded op per subtraction, square, accumulation and root in the chain
_OP_CHAIN = 8


class Violation(NamedTuple):
    kind: str  # "wall" or "pair"
    indices: tuple
    magnitude: float


@dataclass(frozen=True)
class Certificate:
    """Outcome of exact feasibility checking.

    worst_wall_margin is min over spheres of (r0 - r) minus the wall-distance
    measure (norm for spherical containers, largest axis offset for cubes).
    worst_pair_margin is min over pairs of |X_i - X_j| - 2r. The safe_*
    fields deflate those margins by a forward error bound of the evaluation,
    so safe margin > 0 certifies feasibility regardless of rounding.
    """

    valid: bool
    worst_wall_margin: float
    worst_pair_margin: float
    safe_wall_margin: float
    safe_pair_margin: float
    violations: list


def verify_exact(config: Configuration, r0: float, kind: str) -> Certificate:
    """Certify containment and non-overlap with exact comparisons at config.radius."""
    container = Container(kind, r0)  # validates kind and r0
    x = config.centers
    r = config.radius
    n = config.n

    if kind == CUBE:
        wall_measure = np.abs(x).max(axis=1)
    else:
        wall_measure = np.sqrt(np.einsum("ij,ij->i", x, x))
    wall_margin = (r0 - r) - wall_measure
    wall_scale = wall_measure + r0
    safe_wall = wall_margin - _OP_CHAIN * _EPS * wall_scale

    violations = [
        Violation("wall", (int(i),), float(-wall_margin[i]))
        for i in np.flatnonzero(wall_margin < 0.0)
    ]

    if n >= 2:
        iu, ju = np.triu_indices(n, k=1)
        diff = x[iu] - x[ju]
        dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        pair_margin = dist - 2.0 * r
        safe_pair_all = pair_margin - _OP_CHAIN * _EPS * (dist + 2.0 * r)
        worst_pair = float(pair_margin.min())
        safe_pair = float(safe_pair_all.min())
        for k in np.flatnonzero(pair_margin < 0.0):
            violations.append(
                Violation("pair", (int(iu[k]), int(ju[k])), float(-pair_margin[k])))
    else:
        worst_pair = math.inf
        safe_pair = math.inf

    worst_wall = float(wall_margin.min())
    return Certificate(
        valid=worst_wall >= 0.0 and worst_pair >= 0.0,
        worst_wall_margin=worst_wall,
        worst_pair_margin=worst_pair,
        safe_wall_margin=float(safe_wall.min()),
        safe_pair_margin=safe_pair,
        violations=violations,
    )


def verify_fake(config: Configuration, r0: float, kind: str) -> tuple[bool, float]:
    """Evaluate the inflated-radius energy; true certifies an exact packing.

    Energy below 1e-16 at radius 0.5 + 1e-8 forces every individual
    deformation under 1e-8, which leaves strict margins once the radius drops
    back to 0.5. The energy is computed by the plain summation path, not the
    solver kernel, so certification does not trust the optimizer.
    """
    container = Container(kind, r0)
    report = total_energy(config.with_radius(FAKE_RADIUS), container)
    return report.total < 1e-16, report.total


def compare_to_record(n: int, kind: str, ratio: float,
                      table: Optional[RecordTable] = None) -> float:
    """Signed gap to the reference ratio: positive means denser than the record."""
    if table is None:
        table = bundled_records()
    return ratio - table.lookup(n, kind)
