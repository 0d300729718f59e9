import math

import mpmath as mp
import pytest

from igamma_engine.coeffs import SignConvention
from igamma_engine.evaluator import (
    DingleExpansion,
    Method,
    ParisExpansion,
    PrecisionCtx,
    Side,
    Target,
    gamma_dingle,
    gamma_lower_paris,
    gamma_upper_paris,
    get_expansion,
    q_diagonal,
    truncated_sum,
)
from igamma_engine.exceptions import BranchError, DomainError
from igamma_engine.oracle import oracle_gamma_lower, oracle_gamma_upper, oracle_regularized
from igamma_engine.pipeline.reference_tables import E_LIST

from tests.conftest import rel_err


def test_truncated_sum_fixed_order():
    total, m_used, omitted = truncated_sum(lambda k: mp.mpf(2) ** -k, 5, 10, 53)
    assert m_used == 5
    assert total == 2 - mp.mpf(2) ** -5
    assert omitted == mp.mpf(2) ** -6


def test_truncated_sum_stops_at_smallest_term():
    # k! / 10.5^k decreases up to k = 10 and grows after
    def term(k):
        return mp.factorial(k) / mp.mpf(10.5) ** k

    total, m_used, omitted = truncated_sum(term, None, 20, 53)
    assert m_used == 10
    assert omitted == term(11)


def test_truncated_sum_stops_at_precision():
    _, m_used, _ = truncated_sum(lambda k: mp.mpf(2) ** (-8 * k), None, 30, 53)
    assert m_used == 7


def test_truncated_sum_respects_cap():
    _, m_used, _ = truncated_sum(lambda k: mp.mpf(2) ** -k, None, 4, 53)
    assert m_used == 4


@pytest.mark.parametrize("a,z", [(100.0, 120.0), (50.0, 50.0), (1000.0, 1100.0), (10.0, 400.0)])
def test_upper_paris_against_oracle(a, z):
    result = gamma_upper_paris(a, z)
    assert result.target is Target.UPPER
    reference = oracle_gamma_upper(a, z, bits=128).value
    assert rel_err(result.value, reference) <= 10 * result.err_estimate + 2.0**-50


@pytest.mark.parametrize("a,z", [(120.0, 100.0), (50.0, 50.0), (2000.0, 1900.0)])
def test_lower_paris_against_oracle(a, z):
    result = gamma_lower_paris(a, z)
    assert result.target is Target.LOWER
    reference = oracle_gamma_lower(a, z, bits=128).value
    assert rel_err(result.value, reference) <= 10 * result.err_estimate + 2.0**-50


def test_fixed_order_is_honoured():
    result = gamma_upper_paris(100.0, 120.0, m=3)
    assert result.m_used == 3
    assert result.chi_or_xi == pytest.approx(20 / math.sqrt(120))


def test_wrong_side_raises_branch_error():
    with pytest.raises(BranchError) as info:
        gamma_upper_paris(120.0, 100.0)
    assert info.value.use_instead == "gamma_lower_paris"
    with pytest.raises(BranchError) as info:
        gamma_lower_paris(100.0, 120.0)
    assert info.value.use_instead == "gamma_upper_paris"


@pytest.mark.parametrize("a,z", [(0.0, 1.0), (-1.0, 2.0), (1.0, 0.0), (math.inf, 1.0), (1.0, math.nan)])
def test_domain(a, z):
    with pytest.raises(DomainError):
        ParisExpansion().expand(a, z, Side.UPPER)


def test_extended_precision():
    result = gamma_upper_paris(1000.0, 1100.0, m=10, precision=PrecisionCtx(bits=128))
    reference = oracle_gamma_upper(1000.0, 1100.0, bits=192).value
    assert rel_err(result.value, reference) <= 10 * result.err_estimate + 2.0**-120


def test_dingle_variable():
    result = gamma_dingle(100.0, 120.0, m=4)
    assert result.chi_or_xi == pytest.approx(2.0)
    assert result.method is Method.DINGLE


def test_dingle_lower_side():
    result = gamma_dingle(120.0, 110.0, which=Side.LOWER)
    reference = oracle_gamma_lower(121.0, 110.0, bits=128).value
    assert rel_err(result.value, reference) <= 10 * result.err_estimate + 2.0**-50


@pytest.mark.slow
def test_dingle_sign_convention():
    reference = oracle_gamma_upper(101.0, 120.0, bits=128).value
    plain = gamma_dingle(100.0, 120.0, m=4, convention=SignConvention.PLAIN)
    alternating = gamma_dingle(100.0, 120.0, m=4, convention=SignConvention.ALTERNATING)
    assert rel_err(plain.value, reference) < 1e-5
    assert rel_err(alternating.value, reference) > 1e-3


def test_get_expansion():
    assert isinstance(get_expansion(Method.PARIS), ParisExpansion)
    assert isinstance(get_expansion("dingle"), DingleExpansion)
    with pytest.raises(ValueError):
        get_expansion(Method.DIAGONAL)


def test_diagonal_leading_term():
    result = q_diagonal(100.0)
    assert 0.5 - float(result.value) == pytest.approx(float(E_LIST[0]) / math.sqrt(200 * math.pi), rel=1e-3)
    assert result.m_used <= 7


@pytest.mark.slow
@pytest.mark.parametrize("a", [10.0, 1e3])
def test_diagonal_error_bound(a):
    series = q_diagonal(a, m=7, precision=PrecisionCtx(bits=256)).value
    _, q = oracle_regularized(a, a, bits=256)
    bound = 10 * abs(float(E_LIST[7])) * a**-7 / math.sqrt(2 * math.pi * a)
    assert float(abs(series - q.value)) <= bound


@pytest.mark.slow
def test_remainder_order_paris():
    # at a/z = 0.9 the relative error after m = 2 falls at least like z^(-3/2)
    errs = []
    for z in (1e3, 1e4):
        approx = gamma_upper_paris(0.9 * z, z, m=2, precision=PrecisionCtx(bits=128)).value
        errs.append(rel_err(approx, oracle_gamma_upper(0.9 * z, z, bits=192).value))
    assert math.log10(errs[0] / errs[1]) >= 1.5 - 0.3
