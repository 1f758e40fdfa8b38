"""Exact weighted Boolean counting-CSP toolkit.

Models instances with rational weight tables, classifies function catalogs
into the two polynomial-time families (product type and pure affine) or hard,
evaluates tractable instances in polynomial time, and implements the classic
instance reductions (pinning, projection simulation, interpolation, parity
gadgets, lattice inversion) as executable, oracle-verified transformations.
"""

from .classify import (
    FamilyVerdict,
    FunctionReport,
    ProductWitness,
    TiedColumnClass,
    Verdict,
    classify_family,
    classify_function,
    has_affine_support,
    is_affine_relation,
    is_product_like,
    is_product_type,
    is_pure_affine,
    underlying_relation,
    useful_indices,
)
from .errors import (
    CspError,
    InputError,
    InvariantViolation,
    Refusal,
    VerificationFailure,
)
from .gf2 import Gf2System, affine_system_of, count_solutions
from .model import (
    DEFAULT_BUDGET,
    Constraint,
    Instance,
    Relation,
    WeightFunction,
    brute_force_z,
    conditioned_z,
    index_to_tuple,
    instance_from_obj,
    instance_to_json,
    instance_to_obj,
    load_catalog,
    load_instance,
    parse_catalog,
    parse_instance,
    tuple_to_index,
)
from .models import (
    GeneratorMatrix,
    Graph,
    HomTractability,
    TargetMatrix,
    bulatov_grohe_classify,
    cut_identity_sides,
    eval_graph_hom,
    hom_instance,
    incidence_code,
    ising_matrix,
    is_connected,
    rational_rank,
    slice_gram_matrix,
    verify_cut_identity,
    weight_enumerator,
)
from .reductions import (
    Partition,
    PinRecursion,
    UnaryExtraction,
    all_partitions,
    extract_unary,
    extract_unary_iterated,
    interpolation_polynomial,
    interpolation_reduce,
    is_flip_symmetric,
    is_permutation_symmetric,
    merge_coordinates,
    mobius_pinning_reduce,
    mobius_table,
    parity_chain,
    pin_coordinate,
    pinning_reduce_boolean,
    project,
    project_out,
    refines,
    simulate_projection,
    symmetric_pinning_reduce_q,
    symmetrize_parity,
)
from .tractable import eval_product_type, eval_pure_affine, evaluate

__version__ = "0.1.0"

__all__ = [
    "CspError",
    "Constraint",
    "DEFAULT_BUDGET",
    "FamilyVerdict",
    "FunctionReport",
    "GeneratorMatrix",
    "Gf2System",
    "Graph",
    "HomTractability",
    "InputError",
    "Instance",
    "InvariantViolation",
    "Partition",
    "PinRecursion",
    "ProductWitness",
    "Refusal",
    "Relation",
    "TargetMatrix",
    "TiedColumnClass",
    "UnaryExtraction",
    "Verdict",
    "VerificationFailure",
    "WeightFunction",
    "all_partitions",
    "affine_system_of",
    "brute_force_z",
    "bulatov_grohe_classify",
    "classify_family",
    "classify_function",
    "conditioned_z",
    "cut_identity_sides",
    "count_solutions",
    "eval_graph_hom",
    "eval_product_type",
    "eval_pure_affine",
    "evaluate",
    "extract_unary",
    "extract_unary_iterated",
    "has_affine_support",
    "hom_instance",
    "incidence_code",
    "index_to_tuple",
    "instance_from_obj",
    "instance_to_json",
    "instance_to_obj",
    "interpolation_polynomial",
    "interpolation_reduce",
    "is_affine_relation",
    "is_connected",
    "is_flip_symmetric",
    "is_permutation_symmetric",
    "is_product_like",
    "is_product_type",
    "is_pure_affine",
    "ising_matrix",
    "load_catalog",
    "load_instance",
    "merge_coordinates",
    "mobius_pinning_reduce",
    "mobius_table",
    "parity_chain",
    "parse_catalog",
    "parse_instance",
    "pin_coordinate",
    "pinning_reduce_boolean",
    "project",
    "project_out",
    "rational_rank",
    "refines",
    "simulate_projection",
    "slice_gram_matrix",
    "symmetric_pinning_reduce_q",
    "symmetrize_parity",
    "tuple_to_index",
    "underlying_relation",
    "useful_indices",
    "verify_cut_identity",
    "weight_enumerator",
]
