"""Re-derive the small-n best known density ratios from scratch.

Sweeps n = 1..13 spheres in a spherical container and prints the achieved
ratio next to the bundled 8-decimal reference value. Positive deltas mean
the run landed a hair denser than the stored rounding.

The search is stochastic, and a single seed can settle in a sparser basin
(n = 11 and 12 are notorious: seed 0 finds the 1/3 arrangement, about 1e-2
below best known). The solve command therefore runs several seeds and keeps
the densest; this script does the same, stopping early once the reference
is matched. Takes under a minute after the kernels are compiled.
"""

import time

from spherepack.geometry import SPHERE
from spherepack.radius_search import solve_instance
from spherepack.records import bundled_records
from spherepack.verification import verify_exact

table = bundled_records()

print(f"{'n':>3} {'achieved':>12} {'reference':>12} {'delta':>14} {'seeds':>5} {'s':>6}")
for n in range(1, 14):
    reference = table.lookup(n, SPHERE)
    t0 = time.perf_counter()
    best = None
    for seed in range(5):
        outcome = solve_instance(
            n, SPHERE, r0_estimate=table.estimate_r0(n, SPHERE), seed=seed)
        assert verify_exact(outcome.dense_packing, outcome.r0_min, SPHERE).valid
        if best is None or outcome.ratio > best.ratio:
            best = outcome
        if best.ratio >= reference - 1e-8:
            break
    seconds = time.perf_counter() - t0
    print(f"{n:3d} {best.ratio:12.8f} {reference:12.8f} "
          f"{best.ratio - reference:+14.3e} {seed + 1:5d} {seconds:6.2f}")

print("\nevery packing above carries an exact feasibility certificate")
