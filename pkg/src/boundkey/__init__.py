"""Bound-entangled four-qubit states, local filtration, and key rates."""

from .filtering import (
    PARAM_FLOOR,
    FilteredOutError,
    FilteredState,
    LocalFilter,
    apply_filter,
    filter_blocks,
    full_filter_matrix,
    success_probability,
)
from .keyrate import (
    BellDiagReport,
    KeyRateReport,
    PbitConditionReport,
    PrivacyWeights,
    assemble_blocks,
    belldiag_blocks,
    belldiag_condition,
    decompose_blocks,
    kdw_family2_closed_form,
    kdw_from_xyzw,
    kdw_of_state,
    pbit_sufficient_condition,
    weights_from_norms,
    xyzw,
    xyzw_family1_closed_form,
    xyzw_family2_closed_form,
)
from .linalg import (
    ORDERING_R1,
    ORDERING_R2,
    ORDERINGS,
    JacobiConvergenceError,
    hermitian_eigenvalues,
    hermitian_eigh,
    min_eigenvalue,
    partial_transpose,
    shannon_entropy_bits,
    singular_values,
    tensor_product,
    trace_norm,
)
from .optimize import (
    MODE_FULL,
    MODE_STRUCTURED,
    OptimizationProblem,
    OptimizationResult,
    SweepRecord,
    objective,
    optimize,
    sweep,
)
from .states import (
    FAMILY_DOMAINS,
    P_MAX_FAMILY23,
    DensityMatrix16,
    PptReport,
    ValidationReport,
    check_relation_family1,
    family2_sigmas,
    family3_sigma2,
    make_family,
    make_family1,
    make_family2,
    make_family3,
    make_horodecki,
    make_projector_a,
    make_tau,
    ppt_report,
    state_from_json,
    state_to_json,
    validate_state,
)

__version__ = "0.1.0"
