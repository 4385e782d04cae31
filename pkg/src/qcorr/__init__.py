"""Commutator-norm quantum correlation measures for bipartite states."""

from ._accel import USING_NUMBA
from .baselines import (
    QcParams,
    geometric_discord_2q,
    geometric_discord_werner,
    one_norm_gd_qc,
    one_norm_gd_werner,
    q_measure_qc,
)
from .entanglement import (
    EnsembleDecomposition,
    SchurReport,
    UnverifiedMonotoneWarning,
    concurrence,
    concurrence_pure,
    e_p_convex_roof,
    e_p_pure,
    schur_concavity_check,
)
from .gellmann import (
    BlochForm,
    SuAlgebra,
    bloch_decompose,
    bloch_reconstruct,
    gellmann_matrices,
    script_f,
    script_f_qubit,
    su_algebra,
)
from .measures import (
    BasisCandidate,
    MeasureResult,
    a_block,
    d2_closed,
    d_p,
    d_p_in_basis,
    d_p_lsb_pure,
    lambda_p,
    max_value,
    schatten_norm,
)
from .optimizer import (
    MinimizeResult,
    OptimizerConfig,
    minimize,
    params_from_unitary,
    unitary_from_params,
)
from .states import (
    BipartiteState,
    PureState,
    SchmidtDecomposition,
    StateValidationError,
    attach_ancilla,
    cq_state,
    dump_state,
    load_state,
    maximally_entangled,
    partial_trace,
    pure_from_schmidt,
    pure_state,
    purity,
    qc_state,
    random_pure,
    random_state,
    random_unitary,
    save_state,
    schmidt,
    trace_out_ancilla,
    validate,
    werner,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
