"""Independent high-precision reference values."""
from .reference import (
    OracleValue,
    oracle_dk,
    oracle_gamma,
    oracle_gamma_lower,
    oracle_gamma_upper,
    oracle_regularized,
)

__all__ = [
    "OracleValue",
    "oracle_dk",
    "oracle_gamma",
    "oracle_gamma_lower",
    "oracle_gamma_upper",
    "oracle_regularized",
]
