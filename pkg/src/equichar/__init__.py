"""Exact equivariant decomposition of the de Rham cohomology of curves
whose automorphism group has a cyclic p-Sylow subgroup, computed from
ramification data, with a brute-force matrix oracle for cross-validation.
"""

from .cmodules import CharExponent, VirtualCModule, orbit_sum, recover_orbit_factor
from .errors import (
    EquicharError,
    EtaleUnsupported,
    InconsistentLayerData,
    InputValidationError,
    InternalCheckError,
    InvalidCover,
    InvalidJump,
    ModulusMismatch,
    NegativeMultiplicity,
    NotAnOrbitSum,
    RelationCheckFailed,
)
from .formulas import (
    SuperellipticClosedForm,
    TameCoverInput,
    chevalley_weil,
    cyclic_de_rham,
    dimension_report,
    semidirect_de_rham,
    superelliptic_closed_form,
    superelliptic_data,
    validation_report,
)
from .gmodules import GModuleDecomp, GroupShape, indecomposable, is_prime
from .ramification import (
    CyclicCoverData,
    SemidirectCoverData,
    SubcoverResult,
    TameBranchPoint,
    WildBranchPoint,
    WildOrbit,
    derive_quotient_cover,
    derive_subcover,
    generator_pole_divisor,
    genus_intermediate,
    genus_top,
    invariant_differential_divisor,
    underlying_cyclic_data,
)
from .report import Check, CheckReport

__version__ = "0.1.0"

__all__ = [
    "CharExponent",
    "VirtualCModule",
    "orbit_sum",
    "recover_orbit_factor",
    "GModuleDecomp",
    "GroupShape",
    "indecomposable",
    "is_prime",
    "CyclicCoverData",
    "SemidirectCoverData",
    "SubcoverResult",
    "TameBranchPoint",
    "WildBranchPoint",
    "WildOrbit",
    "derive_quotient_cover",
    "derive_subcover",
    "generator_pole_divisor",
    "genus_intermediate",
    "genus_top",
    "invariant_differential_divisor",
    "underlying_cyclic_data",
    "TameCoverInput",
    "SuperellipticClosedForm",
    "chevalley_weil",
    "cyclic_de_rham",
    "semidirect_de_rham",
    "superelliptic_closed_form",
    "superelliptic_data",
    "dimension_report",
    "validation_report",
    "Check",
    "CheckReport",
    "EquicharError",
    "EtaleUnsupported",
    "InconsistentLayerData",
    "InputValidationError",
    "InternalCheckError",
    "InvalidCover",
    "InvalidJump",
    "ModulusMismatch",
    "NegativeMultiplicity",
    "NotAnOrbitSum",
    "RelationCheckFailed",
    "__version__",
]
