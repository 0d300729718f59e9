"""Exact coefficient generation."""
from .rational import (
    BigRational,
    RatPoly,
    VarTag,
    rational_from_json,
    rational_to_json,
    series_divide,
    series_exp,
)
from .stirling import (
    StirlingTable,
    c_poly,
    stirling3,
    stirling3_from_cpoly,
    stirling3_generating,
    stirling_table,
)
from .families import (
    DINGLE_SIGN_CONVENTION,
    CoeffFamily,
    CoeffSet,
    SignConvention,
    a_even_at_zero,
    alpha_hat,
    b_odd_at_zero,
    check_kmax_cap,
    coeff_set_dingle,
    coeff_set_paris,
    dingle_chat,
    dk_at_zero,
    e_coeffs,
    pq_polys,
    stirling_gamma,
)

__all__ = [
    # Rationals
    "BigRational",
    "RatPoly",
    "VarTag",
    "rational_from_json",
    "rational_to_json",
    "series_divide",
    "series_exp",
    # Stirling
    "StirlingTable",
    "c_poly",
    "stirling3",
    "stirling3_from_cpoly",
    "stirling3_generating",
    "stirling_table",
    # Families
    "DINGLE_SIGN_CONVENTION",
    "CoeffFamily",
    "CoeffSet",
    "SignConvention",
    "a_even_at_zero",
    "alpha_hat",
    "b_odd_at_zero",
    "check_kmax_cap",
    "coeff_set_dingle",
    "coeff_set_paris",
    "dingle_chat",
    "dk_at_zero",
    "e_coeffs",
    "pq_polys",
    "stirling_gamma",
]
