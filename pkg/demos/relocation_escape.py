"""Watching a relocation scan rescue a jammed relaxation.

Ten spheres in a ball at (slightly above) the best known radius is tight
enough that a plain relaxation from a random start usually wedges in a local
minimum with leftover overlap. The search then scans candidate moves: for
each (i, j) it reflects the i lowest-energy spheres and the j highest-energy
spheres through the origin, re-relaxes, and keeps the first candidate that
reaches zero energy.

Seed 0 with conservative solver steps is such a case: the initial relax
jams, and the very first scan frees it after a handful of candidates.
"""

from spherepack.energy import energy_value
from spherepack.geometry import SPHERE, Container
from spherepack.local_solver import SolverSettings, a0_solve
from spherepack.geometry import random_configuration, FAKE_RADIUS
from spherepack.records import bundled_records
from spherepack.relocation import a1_search, scan_candidates

table = bundled_records()
r0 = table.estimate_r0(10, SPHERE)
print(f"container radius: {r0:.9f} (best known ratio {table.lookup(10, SPHERE):.8f})")

# Small steps on purpose. The production profile opens with kicks half the
# container wide and usually lands in a dense basin straight away, which
# makes for a boring demonstration.
settings = SolverSettings(initial_step=0.01 * r0)

container = Container(SPHERE, r0)
start = random_configuration(10, container, FAKE_RADIUS, seed=0)
jammed = a0_solve(start, container, settings)
print(f"\ninitial relaxation: status {jammed.status.name}, "
      f"U = {jammed.final_energy:.3e}  <- wedged, not a packing")

candidates = scan_candidates(jammed.configuration, container)
print(f"one scan tries up to {len(candidates)} relocation candidates "
      "(that is n(n-1)/2 for n=10)")
first = candidates[0]
print(f"first candidate relocates subsets of size i={first.i}, j={first.j}")

state = a1_search(10, SPHERE, r0, seed=0, settings=settings)
print(f"\nfull search: packed = {state.succeeded}, "
      f"scans used = {state.scan_count}, local solves = {state.local_solves}")
print(f"final energy: {energy_value(state.packed, container):.1e}")
print("the first scan escaped the jam that plain descent could not")
