"""Highest-weight representations of the two-parameter quantum group U_{p,q}[sl(2)]."""

from .errors import (
    DomainError,
    LogUndefined,
    NonFiniteError,
    ShapeMismatch,
    SingularDenominator,
    UpqError,
    ZeroBase,
    ZeroParameter,
)
from .findim import (
    f_eval,
    f_residual,
    roundtrip_check,
    scan_integer_roots,
    spin_for_dimension,
)
from .ladder import (
    LadderSpectrum,
    Spin,
    classical_ladder,
    classical_normalizer,
    classical_state_norm,
    deformed_ladder,
    unitarizability_ratios,
    unitarizability_verdict,
)
from .qnum import DeformationParams, cpow, pq_bracket, q_bracket, validate_params
from .repmat import (
    RepRealization,
    build_rep,
    casimir_matrix,
    check_casimir,
    check_relations,
    limit_compare,
)

__version__ = "0.1.0"
