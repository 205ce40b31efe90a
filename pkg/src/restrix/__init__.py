"""Finite two-sided restriction monoids and their expansions.

Core objects: table-backed finite algebras (restriction and inverse
monoids, semilattices), Munn trees for the free inverse monoid, the free
restriction monoid as canonical pairs, prefix expansions of groups,
partial-action products, bounded enumeration of presented expansions,
and theorem-verification harnesses over a curated registry.
"""

from .core import (
    Congruence,
    FiniteBiunary,
    FiniteMonoid,
    FiniteSemilattice,
    PartialOrderRel,
    check_restriction_axioms,
    congruence_closure,
    inverse_as_restriction,
    is_ample,
    is_F_restriction,
    is_proper,
    is_reduced,
    is_restriction_monoid,
    natural_order,
    projections,
    quotient,
    sigma,
    sigma_class_maxima,
)
from .errors import (
    InputError,
    PreconditionError,
    RestrixError,
    SizeLimitError,
    TheoremViolation,
    UnsupportedInstance,
)
from .expansions import (
    PartialProduct,
    PrefixExpansion,
    PrefixPair,
    build_partial_product,
    cg_reconstruct,
    eta_tilde,
    expansion_premorphism,
    extend_on_generators,
    lift_homomorphism,
    prefix_expand_group,
    prefix_expansion_size,
)
from .freerestr import (
    FRPair,
    compute_d,
    fr_canonicalize,
    fr_embed,
    fr_leq,
    fr_mul,
    fr_one,
    fr_plus,
    fr_star,
    psi,
)
from .iso import find_isomorphism, is_isomorphism
from .munn import (
    MunnTree,
    fi_inv,
    fi_leq,
    fi_mul,
    fi_one,
    fi_plus,
    fi_star,
    idempotent_meet,
    parse_word,
    format_word,
    tree_of_word,
)
from .partialbij import PartialBijection, munn_monoid, symmetric_inverse_monoid
from .premorph import (
    FinitePremorphism,
    PremorphismClass,
    check_agreement,
    classify,
    munn_representation,
    prop_strongness_check,
    tau_of,
    underlying_premorphism,
)
from .presentations import (
    EnumerationResult,
    PresentedExpansion,
    bounded_enumerate,
)
from .verify import (
    VerificationReport,
    default_suite,
    suite_passed,
    verify_agreement,
    verify_ample,
    verify_cg,
    verify_d_lemmas,
    verify_embedding,
    verify_main,
    verify_prefix_presentation,
    verify_strongness,
)

__version__ = "0.1.0"
