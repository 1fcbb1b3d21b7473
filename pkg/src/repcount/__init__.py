"""Exact counting invariants of unitary representation extensions.

A toolkit that computes Casson-style counting invariants of a compact
3-manifold with marked boundary subsurface, encoded combinatorially by an
adapted handlebody splitting.  At codimension zero the invariant's
magnitude is computed by three independent exact pipelines (determinant
power, symbolic exterior-algebra mapping degree, and cohomology order
power) that must agree; brute-force oracles cross-check the ingredients.
"""

from .exterior import (
    AmbientMismatchError,
    ExtElement,
    GeneratorRangeError,
    GroupFamily,
    GroupKind,
    cylinder_monomial_value,
    degree_of_word_map,
    pullback_primitive,
    special_unitary,
    unitary,
    wedge,
)
from .intlinalg import (
    INFINITE,
    IntMat,
    ShapeError,
    SnfResult,
    cokernel_order,
    det,
    kernel_basis,
    rank,
    smith_normal_form,
)
from .invariants import (
    InvariantReport,
    MultiIndex,
    PipelineDisagreementError,
    PipelineValues,
    UNDETERMINED,
    WrongCodimensionError,
    lambda_invariant,
    lambda_polynomial_cylinder,
    multiindex_degree,
    orientation_flip_sign,
    vanishing_check,
)
from .oracle import (
    DomainLimitError,
    LatticeCountResult,
    NonGenericTargetError,
    SingularMatrixError,
    cokernel_enumeration,
    count_with_generic_target,
    generic_target,
    numeric_degree_u1,
    torus_preimage_count,
)
from .splitting import (
    AdaptedSplitting,
    DocumentError,
    InvalidSplittingError,
    PairHomologyReport,
    assembled_word_map,
    format_splitting_document,
    glue_matrix,
    homology_of_M,
    mayer_vietoris_matrix,
    pair_cohomology,
    parse_splitting_document,
    stabilize,
    validate,
    validation_warnings,
)
from .words import (
    FreeHom,
    MalformedWordError,
    RankMismatchError,
    Word,
    abelianize,
    compose,
    exponent_sum,
    format_word,
    free_reduce,
    parse_word,
)

__version__ = "0.1.0"
