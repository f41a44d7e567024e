"""epkit: exact Moore-Penrose pseudoinverses, EP matrices, and their
factorization-based equivalent characterizations, over the Gaussian rationals.

Layers: scalars (exactnum), matrices and subspaces (linalg), pseudoinverse
and certificates (pseudoinverse), norm-relative checks (pnorms), statement
batteries (characterizations), generation and orchestration (battery), and
a command line (cli).
"""

from .exactnum import (
    GaussianRational,
    I_UNIT,
    ONE,
    ScalarParseError,
    ZERO,
    as_scalar,
    format_scalar,
    parse_scalar,
    to_float,
)
from .linalg import (
    FullRankFactorization,
    InternalConsistencyError,
    MatrixQ,
    ShapeError,
    SingularMatrixError,
    Subspace,
    conj_transpose,
    full_rank_factorize,
    inverse,
    is_invertible,
    kernel,
    kron,
    kron_left_mult,
    range_space,
    rank,
    right_kernel,
    row_space,
    rref,
    solve_exists,
    subspace_equal,
    transpose,
)
from .pseudoinverse import (
    Lemma38FactorChecks,
    MPPair,
    PenroseCertificate,
    is_ep,
    lemma38_factor_witnesses,
    lemma38_witnesses,
    penrose_certificate,
    pinv,
    pinv_from_factorization,
)
from .pnorms import (
    HermitianCheckReport,
    PNorm,
    PowerIterationError,
    expm,
    hermitian_check,
    is_hermitian_idempotent,
    op_norm,
    parse_p,
)
from .characterizations import (
    EPInstance,
    StatementResult,
    prop52_battery,
    thm310_battery,
    thm32_battery,
    thm34_battery,
    thm35_battery,
    thm37_battery,
    thm39_battery,
    thm41_battery,
    thm42_battery,
    thm53_decompose,
    thm55_battery,
    thm56_battery,
)
from .battery import (
    BatteryReport,
    GeneratorConfig,
    GeneratorError,
    child_seed,
    gen_block_pair,
    gen_matrix,
    make_instance,
    run_battery,
    splitmix64,
)

__version__ = "0.1.0"

__all__ = [
    "BatteryReport",
    "EPInstance",
    "FullRankFactorization",
    "GaussianRational",
    "GeneratorConfig",
    "GeneratorError",
    "HermitianCheckReport",
    "I_UNIT",
    "InternalConsistencyError",
    "Lemma38FactorChecks",
    "MPPair",
    "MatrixQ",
    "ONE",
    "PNorm",
    "PenroseCertificate",
    "PowerIterationError",
    "ScalarParseError",
    "ShapeError",
    "SingularMatrixError",
    "StatementResult",
    "Subspace",
    "ZERO",
    "as_scalar",
    "child_seed",
    "conj_transpose",
    "expm",
    "format_scalar",
    "full_rank_factorize",
    "gen_block_pair",
    "gen_matrix",
    "hermitian_check",
    "inverse",
    "is_ep",
    "is_hermitian_idempotent",
    "is_invertible",
    "kernel",
    "kron",
    "kron_left_mult",
    "lemma38_factor_witnesses",
    "lemma38_witnesses",
    "make_instance",
    "op_norm",
    "parse_p",
    "parse_scalar",
    "penrose_certificate",
    "pinv",
    "pinv_from_factorization",
    "prop52_battery",
    "range_space",
    "rank",
    "right_kernel",
    "row_space",
    "rref",
    "run_battery",
    "solve_exists",
    "splitmix64",
    "subspace_equal",
    "thm310_battery",
    "thm32_battery",
    "thm34_battery",
    "thm35_battery",
    "thm37_battery",
    "thm39_battery",
    "thm41_battery",
    "thm42_battery",
    "thm53_decompose",
    "thm55_battery",
    "thm56_battery",
    "to_float",
    "transpose",
]
