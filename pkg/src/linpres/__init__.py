"""Exact computations for linearly presented height-2 ideals in k[x,y,z]."""

from .poly import QQ, DEGREVLEX, LEX, FieldSpec, MonomialOrder, Poly, PolyRing, parse_poly, polyring
from .groebner import (
    IdealHandle,
    eliminate,
    groebner_basis,
    ideal,
    ideal_equal,
    ideal_quotient,
    intersect,
    normal_form,
    saturate,
)
from .hilbert import artinian_cm_test, dimension_and_height, graded_piece_dimension, hilbert_series
from .matforms import (
    ConjugationAction,
    LinearMatrix,
    canonicalize_chaos_form,
    conjugate,
    hilbert_burch_generators,
    minors_ideal,
    one_generic_test,
    rank_at_point,
    structured_matrix,
)
from .invariants import (
    HypothesisError,
    Instance,
    birationality_and_inverse,
    chaos_invariant,
    depth_zero_square_check,
    fiber_ideal,
    fiber_type_check,
    jacobian_dual,
    linear_syzygy_matrix,
    local_profile,
    reduction_number_report,
    rees_ideal,
    symmetric_ideal,
)
from .families import (
    arrangement_family,
    degenerate_arrangement_check,
    fat_point_ideal,
    split_monomial_family,
    monomial_family,
    subhomaloidal_degree,
)

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "DEGREVLEX",
    "LEX",
    "FieldSpec",
    "MonomialOrder",
    "Poly",
    "PolyRing",
    "parse_poly",
    "polyring",
    "IdealHandle",
    "eliminate",
    "groebner_basis",
    "ideal",
    "ideal_equal",
    "ideal_quotient",
    "intersect",
    "normal_form",
    "saturate",
    "artinian_cm_test",
    "dimension_and_height",
    "graded_piece_dimension",
    "hilbert_series",
    "ConjugationAction",
    "LinearMatrix",
    "canonicalize_chaos_form",
    "conjugate",
    "hilbert_burch_generators",
    "minors_ideal",
    "one_generic_test",
    "rank_at_point",
    "structured_matrix",
    "HypothesisError",
    "Instance",
    "birationality_and_inverse",
    "chaos_invariant",
    "depth_zero_square_check",
    "fiber_ideal",
    "fiber_type_check",
    "jacobian_dual",
    "linear_syzygy_matrix",
    "local_profile",
    "reduction_number_report",
    "rees_ideal",
    "symmetric_ideal",
    "arrangement_family",
    "degenerate_arrangement_check",
    "fat_point_ideal",
    "split_monomial_family",
    "monomial_family",
    "subhomaloidal_degree",
]
