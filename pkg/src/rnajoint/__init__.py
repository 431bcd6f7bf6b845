"""Exact and asymptotic enumeration of two-backbone RNA interaction structures.

The package computes truncated counting series with exact rational
coefficients for canonical secondary structures, refined interaction
shapes and full joint structures, validates every coefficient against
independent brute-force enumerators, and extracts growth rates and
asymptotic constants by singularity analysis.
"""

from .asym import (
    AsymptoticEstimate,
    asymptotic_constant,
    asymptotic_table,
    dominant_singularity,
    estimate_asymptotics,
    extract_growth_constant,
    q_polynomial,
)
from .bivar import BivarPoly
from .errors import (
    BadConstantTerm,
    CapExceeded,
    DegreeCapTooLow,
    InvalidDiagram,
    NoConvergence,
    NonzeroInnerConstant,
    OutOfDomain,
    PoorConvergence,
    RnajointError,
    RootAtBoundary,
    RootNotFound,
    ZeroConstantDivisor,
)
from .joint import (
    InflationBundle,
    build_bundle,
    joint_gf,
    joint_gf_via_mseries,
    quadratic_coefficients,
)
from .mseries import CapConfig, MSeries, mcompose, total_degree_config
from .oracle import (
    JointDiagram,
    SecondarySegment,
    TightBlock,
    TightKind,
    count_joint_bruteforce,
    decompose,
    is_joint_structure,
    is_valid_joint,
    iter_joint_structures,
    project_shape,
    reassemble,
)
from .secondary import (
    SecondaryParams,
    count_secondary_bruteforce,
    secondary_eval,
    secondary_gf,
    secondary_singularity,
    u_poly,
)
from .series import Series
from .shapes import (
    ShapeABC,
    ShapeDiagram,
    ShapeGrammarState,
    enumerate_shapes_bruteforce,
    is_valid_shape,
    marker_counts,
    shape_abc,
    shape_gf_closed,
    shape_gf_grammar,
    solve_shape_grammar,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticEstimate",
    "BadConstantTerm",
    "BivarPoly",
    "CapConfig",
    "CapExceeded",
    "DegreeCapTooLow",
    "InflationBundle",
    "InvalidDiagram",
    "JointDiagram",
    "MSeries",
    "NoConvergence",
    "NonzeroInnerConstant",
    "OutOfDomain",
    "PoorConvergence",
    "RnajointError",
    "RootAtBoundary",
    "RootNotFound",
    "SecondaryParams",
    "SecondarySegment",
    "Series",
    "ShapeABC",
    "ShapeDiagram",
    "ShapeGrammarState",
    "TightBlock",
    "TightKind",
    "ZeroConstantDivisor",
    "asymptotic_constant",
    "asymptotic_table",
    "build_bundle",
    "count_joint_bruteforce",
    "count_secondary_bruteforce",
    "decompose",
    "dominant_singularity",
    "enumerate_shapes_bruteforce",
    "estimate_asymptotics",
    "extract_growth_constant",
    "is_joint_structure",
    "is_valid_joint",
    "is_valid_shape",
    "iter_joint_structures",
    "joint_gf",
    "joint_gf_via_mseries",
    "marker_counts",
    "mcompose",
    "project_shape",
    "q_polynomial",
    "quadratic_coefficients",
    "reassemble",
    "secondary_eval",
    "secondary_gf",
    "secondary_singularity",
    "shape_abc",
    "shape_gf_closed",
    "shape_gf_grammar",
    "solve_shape_grammar",
    "total_degree_config",
    "u_poly",
]
