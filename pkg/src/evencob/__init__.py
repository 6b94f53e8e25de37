"""Exact Maslov indices and the weighted cobordism category over the rationals.

The package computes with exact rational arithmetic throughout: subspaces are
canonical RREF bases, signatures come from congruence diagonalization, and
cobordisms are modeled by their induced maps on rational homology.
"""

from .cobordism import (
    CobordismMorphism,
    EvennessReport,
    SurfaceObject,
    compose,
    empty_surface,
    epsilon,
    identity,
    inverse_pseudo_cylinder,
    is_even,
    is_pseudo_cylinder,
    pseudo_cylinder,
    pull_back,
    push_forward,
    validate,
)
from .generators import (
    GeneratorSpec,
    cap,
    disjoint_union,
    format_generator_spec,
    handlebody,
    parse_generator_spec,
    random_even_morphism,
    twisted_cylinder,
)
from .linalg import (
    RationalMatrix,
    Subspace,
    canonical_basis,
    cokernel,
    image,
    kernel,
    map_subspace,
    preimage,
)
from .maslov import (
    LagrangianTriple,
    MaslovForm,
    decompose,
    dim_sum_parity,
    form_annihilator,
    maslov_form,
    maslov_index,
    parity_prediction,
    signature,
)
from .symplectic import (
    DEFAULT_WALK_LENGTH,
    SymplecticSpace,
    beta0,
    beta1,
    random_lagrangian,
    random_symplectic,
    standard_surface_space,
    symplectic_generators,
)

__version__ = "0.1.0"

__all__ = [
    "CobordismMorphism",
    "DEFAULT_WALK_LENGTH",
    "EvennessReport",
    "GeneratorSpec",
    "LagrangianTriple",
    "MaslovForm",
    "RationalMatrix",
    "Subspace",
    "SurfaceObject",
    "SymplecticSpace",
    "beta0",
    "beta1",
    "canonical_basis",
    "cap",
    "cokernel",
    "compose",
    "decompose",
    "dim_sum_parity",
    "disjoint_union",
    "empty_surface",
    "epsilon",
    "form_annihilator",
    "format_generator_spec",
    "handlebody",
    "identity",
    "image",
    "inverse_pseudo_cylinder",
    "is_even",
    "is_pseudo_cylinder",
    "kernel",
    "map_subspace",
    "maslov_form",
    "maslov_index",
    "parity_prediction",
    "parse_generator_spec",
    "preimage",
    "pseudo_cylinder",
    "pull_back",
    "push_forward",
    "random_even_morphism",
    "random_lagrangian",
    "random_symplectic",
    "signature",
    "standard_surface_space",
    "symplectic_generators",
    "twisted_cylinder",
    "validate",
]
