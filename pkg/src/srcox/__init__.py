"""Exact homological invariants of finite simplicial complexes and
certified large-girth quotients of right-angled Coxeter groups."""

from .complex_core import (
    Face,
    LargenessReport,
    SimplicialComplex,
    gen_boundary_simplex,
    gen_cross_polytope,
    gen_cycle,
    gen_random_flag,
    gen_rp2_six,
    gen_simplex,
    generate,
    load_cplx,
    parse_cplx,
)
from .errors import (
    DomainError,
    InputError,
    PropertyViolation,
    ResourceError,
    SrcoxError,
)
from .exact_linalg import IntMatrix, smith_normal_form
from .homology import HomologyProfile, reduced_homology
from .quotient_builder import (
    ConstructionCertificate,
    ConstructionRejected,
    image_group,
    quotient_complex,
    s_construction,
    thicken,
)
from .racg import (
    build_system,
    kernel_displacement_search,
    spherical_elements,
    sufficient_modulus,
    word_ball,
)
from .sr_invariants import (
    BettiTable,
    ClaimReport,
    RegularityReport,
    VcdReport,
    betti_table,
    cdreg_claim_check,
    cm_double_log_bound,
    dhs_bound,
    facet_bound,
    gl_index,
    is_cohen_macaulay,
    regularity,
    tower_N,
    vcd_nerve,
    verify_regularity_witness,
    verify_top_homology_bound,
    vertex_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "ClaimReport",
    "ConstructionCertificate",
    "ConstructionRejected",
    "DomainError",
    "Face",
    "HomologyProfile",
    "InputError",
    "IntMatrix",
    "LargenessReport",
    "PropertyViolation",
    "RegularityReport",
    "ResourceError",
    "SimplicialComplex",
    "SrcoxError",
    "VcdReport",
    "betti_table",
    "build_system",
    "cdreg_claim_check",
    "cm_double_log_bound",
    "dhs_bound",
    "facet_bound",
    "gen_boundary_simplex",
    "gen_cross_polytope",
    "gen_cycle",
    "gen_random_flag",
    "gen_rp2_six",
    "gen_simplex",
    "generate",
    "gl_index",
    "image_group",
    "is_cohen_macaulay",
    "kernel_displacement_search",
    "load_cplx",
    "parse_cplx",
    "quotient_complex",
    "reduced_homology",
    "regularity",
    "s_construction",
    "smith_normal_form",
    "spherical_elements",
    "sufficient_modulus",
    "thicken",
    "tower_N",
    "vcd_nerve",
    "verify_regularity_witness",
    "verify_top_homology_bound",
    "vertex_bound",
    "word_ball",
]
