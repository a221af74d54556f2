"""Exact finite-scale computations with unital hyperarchimedean vector lattices
and their equivalence with Boolean algebras."""

from .boolean import (
    BooleanAlgebra,
    BoolHom,
    Element,
    Partition,
    apply_hom,
    boolean_op,
    common_refinement,
    free_boolean_algebra,
    generated_subalgebra,
    image_partition,
    is_partition,
    make_algebra,
    refines,
)
from .errors import (
    AlgebraMismatchError,
    CapacityError,
    DomainError,
    PartitionError,
    PreconditionError,
    ShapeError,
)
from .free import FreeElement, FreeLattice, cantor_checks, free_element_op, free_uha, universal_extension
from .functors import (
    SpeckerLattice,
    SpeckerMorphism,
    apply,
    check_naturality,
    epsilon,
    eta,
    functor_B_mor,
    functor_B_obj,
    functor_H_mor,
    functor_H_obj,
)
from .spectra import MaxIdeal, dual_map, max_spectrum, separates_points, yosida_eval
from .specker import (
    AtomValuation,
    SpeckerElement,
    abs_val,
    block_decomposition,
    canonicalize,
    from_atom_valuation,
    from_values,
    hyperarchimedean_witness,
    is_boolean_element,
    minimal_decomposition,
    scalar_mul,
    specker_op,
    to_atom_valuation,
)
from .structure import PolarDescriptor, direct_factor_decomposition, principal_polar, product
from .terms import eval_term, parse_term, print_term

__version__ = "0.1.0"

__all__ = [
    "BooleanAlgebra",
    "BoolHom",
    "Element",
    "Partition",
    "apply_hom",
    "boolean_op",
    "common_refinement",
    "free_boolean_algebra",
    "generated_subalgebra",
    "image_partition",
    "is_partition",
    "make_algebra",
    "refines",
    "AlgebraMismatchError",
    "CapacityError",
    "DomainError",
    "PartitionError",
    "PreconditionError",
    "ShapeError",
    "SpeckerLattice",
    "SpeckerMorphism",
    "apply",
    "check_naturality",
    "epsilon",
    "eta",
    "functor_B_mor",
    "functor_B_obj",
    "functor_H_mor",
    "functor_H_obj",
    "AtomValuation",
    "SpeckerElement",
    "abs_val",
    "block_decomposition",
    "canonicalize",
    "from_atom_valuation",
    "from_values",
    "hyperarchimedean_witness",
    "is_boolean_element",
    "minimal_decomposition",
    "scalar_mul",
    "specker_op",
    "to_atom_valuation",
    "FreeElement",
    "FreeLattice",
    "cantor_checks",
    "free_element_op",
    "free_uha",
    "universal_extension",
    "MaxIdeal",
    "dual_map",
    "max_spectrum",
    "separates_points",
    "yosida_eval",
    "PolarDescriptor",
    "direct_factor_decomposition",
    "principal_polar",
    "product",
    "eval_term",
    "parse_term",
    "print_term",
]
