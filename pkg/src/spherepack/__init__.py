"""Dense packing of n equal spheres in spherical and cubic containers.

Feasibility is driven by a deformation energy that is zero exactly on valid
packings; solving at a radius inflated by 1e-8 and demanding energy below
1e-16 leaves margins that make exact floating-point certification possible
at radius 0.5. Global search relocates energy-ranked subsets of spheres
through the container center between local relaxations, and a binary search
shrinks the container to its smallest feasible radius.
"""

from .energy import (
    EnergyReport,
    energy_gradient,
    energy_value,
    total_energy,
    total_energy_reference,
)
from .geometry import (
    CUBE,
    FAKE_RADIUS,
    KINDS,
    SPHERE,
    STANDARD_RADIUS,
    Configuration,
    Container,
    complement,
    invert_subset,
    random_configuration,
)
from .local_solver import LocalResult, SolverSettings, SolveStatus, a0_solve
from .radius_search import (
    SolveOutcome,
    UpperBoundInfeasible,
    binary_search_radius,
    solve_instance,
)
from .records import (
    NotInTable,
    RecordTable,
    RunReport,
    bundled_records,
    load_packing,
    load_records,
    save_packing,
)
from .relocation import (
    ScanCandidate,
    SearchState,
    a1_search,
    max_u,
    min_u,
    scan_candidates,
)
from .verification import Certificate, Violation, compare_to_record, verify_exact, verify_fake

__version__ = "1.0.0"

__all__ = [
    "CUBE",
    "Certificate",
    "Configuration",
    "Container",
    "EnergyReport",
    "FAKE_RADIUS",
    "KINDS",
    "LocalResult",
    "NotInTable",
    "RecordTable",
    "RunReport",
    "SPHERE",
    "STANDARD_RADIUS",
    "ScanCandidate",
    "SearchState",
    "SolveOutcome",
    "SolveStatus",
    "SolverSettings",
    "UpperBoundInfeasible",
    "Violation",
    "a0_solve",
    "a1_search",
    "binary_search_radius",
    "bundled_records",
    "compare_to_record",
    "complement",
    "energy_gradient",
    "energy_value",
    "invert_subset",
    "load_packing",
    "load_records",
    "max_u",
    "min_u",
    "random_configuration",
    "save_packing",
    "scan_candidates",
    "solve_instance",
    "total_energy",
    "total_energy_reference",
    "verify_exact",
    "verify_fake",
]
