"""Exact homotopy-theoretic computations with (filtered) cochain complexes over Q."""

from .complexes import (
    ChainMap,
    CohomologyReport,
    Complex,
    cohomology,
    cohomology_map,
    cone,
    direct_sum,
    disk,
    ext_dim,
    generator,
    hom_complex,
    is_quasi_iso,
    make_complex,
    semisimple_ext_oracle,
    shift,
    sphere,
    suspension,
    truncate_nonneg,
    zero_complex,
)
from .dold_kan import (
    MonotoneMap,
    SimplicialVS,
    denormalize,
    epi_monic_factorization,
    normalize,
    surjections,
)
from .filtered import (
    FilteredComplex,
    FilteredMap,
    check_cofibrant_hypotheses,
    filtered_ext_dim,
    filtered_generator,
    filtered_hom_complex,
    filtered_lift_square,
    is_filtered_fibration,
    is_filtered_trivial_fibration,
    is_filtered_weak_equivalence,
    trivial_filtration,
)
from .grassmann import (
    FlagPoint,
    GrassPoint,
    Shadow,
    shadow_flag,
    shadow_grass,
    validate_flag_point,
    validate_grass_point,
)
from .harness import Budget, run_suite
from .linalg import Matrix
from .mapping import mapping_space, pi_dim
from .model import (
    contracting_homotopy,
    factor_cof_trivfib,
    factor_trivcof_fib,
    is_cofibration,
    is_fibration,
    is_trivial_cofibration,
    is_trivial_fibration,
    lift_square,
    obstruction_group,
)
from .rees import (
    GradedMap,
    GradedModuleComplex,
    graded_ext_weight0_dim,
    graded_hom_weight0,
    graded_is_fibration,
    is_torsion_free,
    phi,
    rees,
    rees_fibration_audit,
)

__all__ = [
    "Budget",
    "ChainMap",
    "CohomologyReport",
    "Complex",
    "FilteredComplex",
    "FilteredMap",
    "FlagPoint",
    "GradedMap",
    "GradedModuleComplex",
    "GrassPoint",
    "Matrix",
    "MonotoneMap",
    "Shadow",
    "SimplicialVS",
    "check_cofibrant_hypotheses",
    "cohomology",
    "cohomology_map",
    "cone",
    "contracting_homotopy",
    "denormalize",
    "direct_sum",
    "disk",
    "epi_monic_factorization",
    "ext_dim",
    "factor_cof_trivfib",
    "factor_trivcof_fib",
    "filtered_ext_dim",
    "filtered_generator",
    "filtered_hom_complex",
    "filtered_lift_square",
    "generator",
    "graded_ext_weight0_dim",
    "graded_hom_weight0",
    "graded_is_fibration",
    "hom_complex",
    "is_cofibration",
    "is_fibration",
    "is_filtered_fibration",
    "is_filtered_trivial_fibration",
    "is_filtered_weak_equivalence",
    "is_quasi_iso",
    "is_torsion_free",
    "is_trivial_cofibration",
    "is_trivial_fibration",
    "lift_square",
    "make_complex",
    "mapping_space",
    "normalize",
    "obstruction_group",
    "phi",
    "pi_dim",
    "rees",
    "rees_fibration_audit",
    "run_suite",
    "semisimple_ext_oracle",
    "shadow_flag",
    "shadow_grass",
    "shift",
    "sphere",
    "surjections",
    "suspension",
    "trivial_filtration",
    "truncate_nonneg",
    "validate_flag_point",
    "validate_grass_point",
    "zero_complex",
]
