"""Numerical evaluation of the incomplete gamma functions."""
from .base import (
    Branch,
    EvalRequest,
    EvalResult,
    Method,
    PrecisionCtx,
    Side,
    Target,
    transition_chi,
)
from .parabolic import (
    CancellationAssembler,
    assemble_naive,
    d0,
    dk_sequence,
    large_chi_dk,
    naive_dk,
    naive_paris_coefficient,
    paris_coefficient,
    polyval_mp,
    recurrence_residual,
    to_mpf,
)
from .expansions import (
    DingleExpansion,
    ExpansionSum,
    ParisExpansion,
    UniformExpansion,
    gamma_dingle,
    gamma_lower_paris,
    gamma_upper_paris,
    get_expansion,
    q_diagonal,
    truncated_sum,
)
from .dispatch import eval, regularized_p, regularized_q, resolve_method

__all__ = [
    # Types
    "Branch",
    "EvalRequest",
    "EvalResult",
    "Method",
    "PrecisionCtx",
    "Side",
    "Target",
    "transition_chi",
    # Parabolic cylinder layer
    "CancellationAssembler",
    "assemble_naive",
    "d0",
    "dk_sequence",
    "large_chi_dk",
    "naive_dk",
    "naive_paris_coefficient",
    "paris_coefficient",
    "polyval_mp",
    "recurrence_residual",
    "to_mpf",
    # Expansions
    "DingleExpansion",
    "ExpansionSum",
    "ParisExpansion",
    "UniformExpansion",
    "gamma_dingle",
    "gamma_lower_paris",
    "gamma_upper_paris",
    "get_expansion",
    "q_diagonal",
    "truncated_sum",
    # Dispatch
    "eval",
    "regularized_p",
    "regularized_q",
    "resolve_method",
]
