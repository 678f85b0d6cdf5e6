"""Hurwitz vectors over dihedral groups: braid and automorphism actions,
numerical types, a constructive normal-form reducer and an exhaustive
orbit oracle."""

from .dihedral import (
    Automorphism,
    ConjugacyClassId,
    DihedralElement,
    GroupContext,
    apply_automorphism,
    compose,
    conjugacy_class,
    conjugate,
    enumerate_automorphisms,
    inverse,
    multiply,
    subgroup_closure,
)
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    HurwitzError,
    IdentityEntry,
    InternalReductionFailure,
    InvalidHurwitzVector,
    NotGenerating,
    NotRealizable,
    ParseError,
    PreconditionError,
    ProductNotIdentity,
)
from .hurwitz import (
    HurwitzVector,
    NumericalType,
    NuVector,
    apply_automorphism_diag,
    apply_braid_word,
    braid_move,
    covering_genus,
    enumerate_types,
    numerical_type,
    nu,
    parse_vector,
    validate,
)
from .lemmas import (
    lemma_abm_shift,
    lemma_double_exchange,
    lemma_full_twist,
    lemma_no_rotations,
    lemma_pair_orbit,
    lemma_pairs,
    lemma_triple_normalize,
)
from .normal_form import NormalFormShape, canonical_form, reduce, reduce_detailed
from .oracle import OrbitPartition, compute_orbits, enumerate_valid, same_orbit, verify_theorem
from .trace import MoveTrace

__all__ = [name for name in dir() if not name.startswith("_")]
