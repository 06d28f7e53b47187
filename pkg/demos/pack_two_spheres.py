"""Smallest nontrivial instance: two unit-diameter spheres in a ball.

Two spheres of radius 0.5 touching each other need a container of radius
exactly 1.0, so the best density ratio is 0.5 / 1.0 = 0.5. This script runs
the full pipeline (global search, radius bisection, certification) and checks
the answer against that closed form.
"""

import numpy as np

from spherepack.geometry import SPHERE
from spherepack.radius_search import solve_instance
from spherepack.records import bundled_records
from spherepack.verification import verify_exact

table = bundled_records()
estimate = table.estimate_r0(2, SPHERE)
print(f"starting container radius estimate: {estimate:.9f}")

outcome = solve_instance(2, SPHERE, r0_estimate=estimate, seed=0)

print(f"minimal container radius: {outcome.r0_min:.12f}")
print(f"density ratio:            {outcome.ratio:.12f}")
print(f"error vs exact 1/2:       {outcome.ratio - 0.5:+.3e}")
print(f"bisection probes:         {outcome.search_iterations}")

# The two centers should sit on a diameter, half a unit from the origin.
centers = outcome.dense_packing.centers
print("centers:")
print(np.array2string(centers, precision=6, suppress_small=True))
print(f"center separation: {np.linalg.norm(centers[0] - centers[1]):.9f}"
      " (touching at 1.0)")

cert = verify_exact(outcome.dense_packing, outcome.r0_min, SPHERE)
print(f"certificate valid: {cert.valid}")
print(f"  worst wall margin: {cert.worst_wall_margin:.3e}")
print(f"  worst pair margin: {cert.worst_pair_margin:.3e}")
