"""Exact generalized inverses over Gaussian rationals.

Computes Moore-Penrose, group and core inverses with bit-exact rational
arithmetic, analyzes the resolvent-style expression for the core inverse
of a perturbed matrix, and fuzz-checks every decidable equivalence on
randomized instances.
"""

from .errors import (
    DimensionMismatchError,
    GenerationExhaustedError,
    GinvError,
    ImpossibleRequestError,
    IndexExceedsOneError,
    InternalInconsistencyError,
    MatrixParseError,
    SingularMatrixError,
    TheoremFalsificationError,
)
from .exact import GaussianRational, Matrix, as_scalar
from .harness import (
    CAMPAIGN_KINDS,
    FuzzReport,
    GeneratorConfig,
    NullRankWitnessReport,
    Violation,
    fuzz_campaign,
    null_rank_preserving_demonstrator,
    random_index_one_matrix,
    random_range_preserving_perturbation,
    random_range_violating_perturbation,
)
from .linalg import (
    FullRankFactorization,
    RrefResult,
    determinant,
    frobenius_norm_sq,
    full_rank_factorization,
    inverse,
    null_space_basis,
    pseudo_inverse,
    rank,
    rref,
    same_null_space,
    same_range,
    spectral_norm,
    subspace_leq,
    to_float,
)
from .perturbation import (
    NormBoundReport,
    PerturbationCase,
    PerturbationVerdict,
    RangeConditions,
    analyze,
    norm_bounds,
    range_conditions,
    simplest_expression,
)
from .theta import (
    THETA_NAMES,
    IndexReport,
    check_equation,
    core_inverse,
    group_inverse,
    index,
    is_core_inverse_def11,
    is_core_inverse_def12,
    is_theta_inverse,
    moore_penrose,
    orthogonal_projector,
    resolve_theta,
)

__version__ = "0.1.0"
