"""
Incomplete gamma engine - uniform asymptotic expansions of gamma(a, z) and Gamma(a, z).
"""
from .coeffs import (
    CoeffSet,
    RatPoly,
    StirlingTable,
    coeff_set_dingle,
    coeff_set_paris,
    e_coeffs,
    stirling3,
    stirling_table,
)
from .config import EngineConfig, get_config, load_config
from .evaluator import (
    EvalRequest,
    EvalResult,
    Method,
    PrecisionCtx,
    Target,
    dk_sequence,
    eval,
    gamma_dingle,
    gamma_lower_paris,
    gamma_upper_paris,
    q_diagonal,
    regularized_p,
    regularized_q,
)
from .exceptions import (
    BranchError,
    CoefficientCapError,
    ConvergenceError,
    DomainError,
    IGammaError,
    PrecisionCeilingError,
)
from .oracle import OracleValue, oracle_dk, oracle_gamma_lower, oracle_gamma_upper, oracle_regularized

__version__ = "0.1.0"

__all__ = [
    # Coefficients
    "CoeffSet",
    "RatPoly",
    "StirlingTable",
    "coeff_set_dingle",
    "coeff_set_paris",
    "e_coeffs",
    "stirling3",
    "stirling_table",
    # Config
    "EngineConfig",
    "get_config",
    "load_config",
    # Evaluator
    "EvalRequest",
    "EvalResult",
    "Method",
    "PrecisionCtx",
    "Target",
    "dk_sequence",
    "eval",
    "gamma_dingle",
    "gamma_lower_paris",
    "gamma_upper_paris",
    "q_diagonal",
    "regularized_p",
    "regularized_q",
    # Errors
    "BranchError",
    "CoefficientCapError",
    "ConvergenceError",
    "DomainError",
    "IGammaError",
    "PrecisionCeilingError",
    # Oracle
    "OracleValue",
    "oracle_dk",
    "oracle_gamma_lower",
    "oracle_gamma_upper",
    "oracle_regularized",
]
