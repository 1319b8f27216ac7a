"""Exact symbolic engine for Temperley-Lieb box algebras.

The package computes, over exact rational functions in the loop modulus:
diagram products and traces on four-sided boxes, the orthogonalizing change
of basis between the joint and free pictures, conditional expectations onto
tensor-square subalgebras, diagrammatic derivations with their kernels and
conjugate variables, meander moment polynomials, and Perron-Frobenius index
parameters of principal graphs.
"""

from .scalars import (
    DELTA,
    ONE,
    ZERO,
    PoleError,
    Scalar,
    evaluate_numeric,
    parse_scalar,
    scalar_arithmetic,
)
from .diagrams import (
    BoxShape,
    TLDiagram,
    catalan,
    classify,
    enumerate_linear_matchings,
    enumerate_matchings,
    enumerate_shapes,
    identity_rectangle,
    is_paired_diagram,
    rotate_pi,
    split_paired_diagram,
)
from .algebra import (
    DiagramVector,
    GradedElement,
    boxtimes_trace,
    cup_cap,
    dagger,
    embed_tensor,
    gr_include,
    gr_product,
    identity_strings,
    inner_product_v,
    jones_generator,
    op_map,
    v_product,
    v_trace,
    vertical_bars,
    voiculescu_trace,
    w_product,
    w_trace,
)
from .basis_change import (
    from_orthogonal,
    map_X,
    map_Y,
    round_trip_operator,
    to_orthogonal,
)
from .pairings import (
    PAIRING_FLAVORS,
    DegenerateModulusError,
    GramMatrix,
    annihilated_by_expectation,
    conditional_expectation,
    expectation_at_modulus,
    gram_matrix,
    inner_product,
    orthogonal_complement_basis,
)
from .derivations import (
    DerivationLabel,
    KernelLabel,
    ReconstructionError,
    conjugate_variable,
    derivation,
    diagram_coproduct,
    double_coproduct,
    hook_difference,
    kernel_reconstruct,
    label_right_action,
    raw_derivation,
)
from .meander import (
    MAX_ORDER,
    MeanderCount,
    enumerate_meanders,
    meander_polynomial,
    polynomial_string,
    trace_moment,
)
from .spectrum import PrincipalGraph, global_index, pf_dimensions, r_parameter
from .serialization import (
    diagram_from_document,
    diagram_to_document,
    element_from_document,
    element_to_document,
    scalar_from_document,
    scalar_to_document,
)

__version__ = "0.1.0"

__all__ = [
    "DELTA",
    "ONE",
    "ZERO",
    "MAX_ORDER",
    "PAIRING_FLAVORS",
    "BoxShape",
    "DegenerateModulusError",
    "DerivationLabel",
    "DiagramVector",
    "GradedElement",
    "GramMatrix",
    "KernelLabel",
    "MeanderCount",
    "PoleError",
    "PrincipalGraph",
    "ReconstructionError",
    "Scalar",
    "TLDiagram",
    "annihilated_by_expectation",
    "boxtimes_trace",
    "catalan",
    "classify",
    "conditional_expectation",
    "conjugate_variable",
    "cup_cap",
    "dagger",
    "derivation",
    "diagram_coproduct",
    "diagram_from_document",
    "diagram_to_document",
    "double_coproduct",
    "element_from_document",
    "element_to_document",
    "embed_tensor",
    "enumerate_linear_matchings",
    "enumerate_matchings",
    "enumerate_meanders",
    "enumerate_shapes",
    "evaluate_numeric",
    "expectation_at_modulus",
    "from_orthogonal",
    "global_index",
    "gr_include",
    "gr_product",
    "gram_matrix",
    "hook_difference",
    "identity_rectangle",
    "identity_strings",
    "inner_product",
    "inner_product_v",
    "is_paired_diagram",
    "jones_generator",
    "kernel_reconstruct",
    "label_right_action",
    "map_X",
    "map_Y",
    "meander_polynomial",
    "op_map",
    "orthogonal_complement_basis",
    "parse_scalar",
    "pf_dimensions",
    "polynomial_string",
    "r_parameter",
    "raw_derivation",
    "rotate_pi",
    "round_trip_operator",
    "scalar_arithmetic",
    "scalar_from_document",
    "scalar_to_document",
    "split_paired_diagram",
    "to_orthogonal",
    "trace_moment",
    "v_product",
    "v_trace",
    "vertical_bars",
    "voiculescu_trace",
    "w_product",
    "w_trace",
]
