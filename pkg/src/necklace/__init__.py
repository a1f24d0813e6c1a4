"""Exact-arithmetic constructions and relation checking for representations
of the necklace braid group.

Scalars live in cyclotomic fields with Laurent-polynomial fractions over
named variables; every relation check is an exact identity, never a numeric
tolerance.  The subpackages cover group presentations and verification,
classical braid representations and their rotation extensions, local
Yang-Baxter models with finite-image closures, twisted shift algebras,
free-group automorphism actions, and the Temperley-Lieb chain with its
seamed braid translator.
"""

from .classical_reps import (
    BraidRep,
    NecklaceExtension,
    burau_reduced,
    burau_unreduced,
    dim2_family,
    lkb,
    lkb_nonstandard_tau,
    n2_tau_list,
    nonstandard_block_tau,
    projector_extension,
    standard_extension,
    standard_rep,
    twist,
    unreduced_burau_extension,
)
from .errors import (
    AlphabetMismatch,
    CapExceeded,
    ConfigParseError,
    CorruptCheckpoint,
    NecklaceError,
    NotDiagonalizable,
    ParameterDegenerate,
    ScalarParseError,
    SizeBudgetExceeded,
    SpectrumNotResolved,
)
from .linalg import (
    ExactMatrix,
    LocalOperator,
    burnside_irreducible,
    char_poly,
    group_closure,
    kron,
    materialize,
    monomial_spectrum,
    nilpotency_probe,
    spectral_projectors,
)
from .local_reps import (
    BVS,
    bvs_catalog,
    conjecture_ratio,
    flip_bvs,
    ising,
    local_necklace_rep,
    n2_symmetric_extension,
    ybe_check,
)
from .loop_actions import (
    FreeAut,
    FreeWord,
    braid_action,
    lb_generators,
    rotation_action,
    swap_action,
    zeta,
    zeta_kernel_check,
)
from .presentations import (
    RelationSet,
    RepAssignment,
    VerifyReport,
    braid_relations,
    circular_relations,
    induced_from_first,
    loop_braid_relations,
    necklace_relations_full,
    necklace_relations_reduced,
    reduced_set_sufficiency_check,
    symmetric_group_assignment,
    verify,
)
from .scalar import (
    ONE,
    ZERO,
    RootContext,
    Scalar,
    parse_scalar,
    rational,
    root_of_unity,
    var,
)
from .tl_chain import (
    SeamedChain,
    TLChain,
    build_chain,
    build_seam,
    dichotomy_probe,
    flat_extension,
    gamma_spectrum_table,
    seamed_standard_extension,
)
from .twisted_algebras import (
    nes_algebra,
    nes_assignment,
    nes_conjugation_identities,
    nes_local_assignment,
    nes_matrix_model,
    nes_mod_n_closure_check,
    quat_algebra,
    quat_assignment,
    quat_conjugation_table,
    quat_hom_check,
)

__version__ = "0.1.0"
