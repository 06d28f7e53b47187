"""Packings survive a trip through the text format, tampering does not.

Solves a small cube instance, writes the packing file, loads it back, and
confirms the certificate still holds bit for bit. Then nudges one coordinate
by a millionth and shows verification catching the resulting overlap.
"""

import tempfile
from pathlib import Path

import numpy as np

from spherepack.geometry import CUBE, Configuration
from spherepack.radius_search import solve_instance
from spherepack.records import bundled_records, load_packing, save_packing
from spherepack.verification import verify_exact

table = bundled_records()
outcome = solve_instance(8, CUBE, r0_estimate=table.estimate_r0(8, CUBE), seed=0)
print(f"8 spheres in a cube: ratio {outcome.ratio:.8f} "
      "(the corner arrangement, exactly 1/2)")

path = Path(tempfile.mkdtemp()) / "cube8.txt"
save_packing(outcome, path)
print(f"\nwrote {path} ({path.stat().st_size} bytes):")
print("".join(path.read_text().splitlines(keepends=True)[:4]) + "...")

payload = load_packing(path)
same = np.array_equal(payload.dense_packing.centers,
                      outcome.dense_packing.centers)
print(f"coordinates identical after reload: {same}")

cert = verify_exact(payload.dense_packing, payload.r0_min, CUBE)
print(f"reloaded certificate valid: {cert.valid}")

# Corrupt one coordinate. In the corner arrangement every sphere touches
# its three neighbors, so any inward nudge creates a real overlap.
bad_centers = payload.dense_packing.centers.copy()
bad_centers[0] -= 1e-6 * np.sign(bad_centers[0])
bad = Configuration(bad_centers, payload.dense_packing.radius)
cert = verify_exact(bad, payload.r0_min, CUBE)
print(f"\nafter nudging sphere 0 inward by 1e-6: valid = {cert.valid}")
for v in cert.violations[:3]:
    print(f"  {v.kind} violation at {v.indices}, magnitude {v.magnitude:.2e}")
