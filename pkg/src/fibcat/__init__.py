"""Executable category theory at desk scale: finite categories, Grothendieck
constructions, fibration checking, and FI-type audits."""

__version__ = "0.1.0"

from .core import (
    AssociativityViolation,
    CategoryError,
    Check,
    CompositeEndpointViolation,
    FinCat,
    MissingComposite,
    MissingIdentity,
    NonComposablePairInTable,
    UnitViolation,
    UnknownMorphism,
    UnknownObject,
    automorphisms,
    below_set,
    is_ei,
    is_groupoid,
    is_iso,
    is_mono,
    is_transitive,
    iso_classes,
    mono_witness,
    validate_category,
)
from .functors import (
    FinFunctor,
    FunctorProperties,
    NatTrans,
    NotAFunctor,
    NotNatural,
    compose_functors,
    functor_properties,
    functors_equal,
    identity_functor,
    identity_nat_trans,
    validate_functor,
    validate_nat_trans,
)
from .limits import (
    Cospan,
    NonCommuting,
    NotACospan,
    NotASpan,
    Pullback,
    Span,
    Square,
    WeakPushout,
    is_pullback_square,
    is_weak_pushout_square,
    preserves_pullbacks,
    preserves_weak_pushouts,
    pullback,
    weak_pushout,
)
from .indexed import (
    BadFiberFunctor,
    CoherenceViolation,
    CompositorNotIso,
    IndexedCat,
    UnitorViolation,
    restrict_to_aut,
    strict_functoriality_check,
    validate_indexed,
)
from .groth import (
    Cleaving,
    GrothResult,
    NotAFibration,
    TotalMor,
    TriangleDoesNotCommute,
    canonical_lift,
    check_fibred_functor,
    check_fibred_nat_trans,
    choose_cleaving,
    fiber,
    fiber_inclusion,
    grothendieck,
    invert_total,
    is_cartesian,
    is_fibration,
    reindexing,
)
from .fitype import (
    FiTypeReport,
    check_fi_type,
    check_ei_lemma,
    check_increasing_lemma,
    check_locally_finite_product_law,
    check_mono_lemma,
    check_transitivity_lemma,
    endomorphism_invertibility,
    transitivity_ell_condition,
)
from .theorem import (
    GrayReport,
    HypothesesNotVerified,
    HypothesesReport,
    SearchBudgetExceeded,
    TheoremVerdict,
    WeakReversibilityWitness,
    WitnessInvalid,
    check_gray_pullbacks,
    check_hypotheses,
    construct_weak_pushout_total,
    search_witness,
    validate_witness,
    verify_main_theorem,
)
from .groups import (
    Extension,
    GroupHom,
    GroupTable,
    Law1Violation,
    Law2Violation,
    NotAGroup,
    NotAHomomorphism,
    NotASection,
    NotAnAction,
    NotSurjective,
    TwistedAction,
    automorphism_group,
    category_as_group,
    cyclic_group,
    extension_from_twisted,
    find_homomorphic_section,
    group_as_category,
    group_isomorphism,
    groups_isomorphic,
    hom_as_functor,
    intertwiner_check,
    intertwiner_hcompose,
    intertwiner_vcompose,
    is_split,
    is_surjective_hom,
    kernel_subgroup,
    semidirect,
    strict_twisted,
    symmetric_group,
    trivial_group,
    twisted_from_surjection,
    twisted_to_indexed,
    validate_group,
    validate_group_hom,
    validate_twisted_action,
)
from . import generators
