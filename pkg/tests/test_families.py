import dataclasses
from fractions import Fraction as F
from math import factorial

import pytest

from igamma_engine.coeffs import (
    CoeffFamily,
    CoeffSet,
    RatPoly,
    SignConvention,
    VarTag,
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
from igamma_engine.exceptions import CoefficientCapError
from igamma_engine.pipeline.reference_tables import (
    A_TABLE,
    B_TABLE,
    DINGLE_A1,
    DINGLE_B1,
    E_LIST,
    STIRLING_GAMMA,
    dense,
)


def poly(coeffs, tag=VarTag.CHI):
    return RatPoly(dense(coeffs), tag)


def test_pq_low_orders():
    p, q = pq_polys(4)
    assert p[0] == RatPoly.constant(1) and q[0].is_zero()
    assert p[1] == RatPoly([0, -1]) and q[1] == RatPoly.constant(-1)
    assert p[2] == RatPoly([F(1, 2), 0, F(1, 2)])
    assert p[3] == RatPoly([0, F(-1, 2), 0, F(-1, 6)])
    assert p[4] == RatPoly([F(1, 8), 0, F(1, 4), 0, F(1, 24)])
    assert q[3] == RatPoly([F(-1, 3), 0, F(-1, 6)])
    assert q[4] == RatPoly([0, F(5, 24), 0, F(1, 24)])


def test_pq_degrees_and_parity():
    p, q = pq_polys(15)
    for k in range(16):
        assert p[k].degree == k
        assert all(c == 0 for i, c in enumerate(p[k].coeffs) if (i - k) % 2)
        if k >= 1:
            assert q[k].degree == k - 1


def test_paris_reproduces_published_table():
    coeffs = coeff_set_paris(5)
    for k in range(6):
        assert coeffs.A[k] == poly(A_TABLE[k]), f"A_{k}"
        assert coeffs.B[k] == poly(B_TABLE[k]), f"B_{k}"


def test_paris_structure():
    coeffs = coeff_set_paris(8)
    assert coeffs.family is CoeffFamily.PARIS
    assert coeffs.b_sign == -1
    assert coeffs.var_tag is VarTag.CHI
    for k in range(9):
        assert coeffs.A[k].degree == 3 * k
        if k:
            assert coeffs.B[k].degree <= 3 * k - 1
        # A_k has the parity of k, B_k the opposite one
        assert all(c == 0 for i, c in enumerate(coeffs.A[k].coeffs) if (i - k) % 2)
        assert all(c == 0 for i, c in enumerate(coeffs.B[k].coeffs) if (i - k) % 2 == 0)


def test_paris_k0():
    coeffs = coeff_set_paris(0)
    assert coeffs.A == (RatPoly.constant(1),)
    assert coeffs.B[0].is_zero()


def test_cap(engine_env):
    engine_env(kmax_cap=3)
    with pytest.raises(CoefficientCapError, match="k_max=4"):
        coeff_set_paris(4)
    assert coeff_set_paris(4, force=True).max_k == 4
    with pytest.raises(CoefficientCapError):
        e_coeffs(4)
    with pytest.raises(ValueError):
        coeff_set_paris(-1)
    check_kmax_cap(3)
    check_kmax_cap(40, force=True)
    with pytest.raises(CoefficientCapError):
        check_kmax_cap(4)


def test_coeff_set_is_immutable():
    coeffs = coeff_set_paris(2)
    with pytest.raises(dataclasses.FrozenInstanceError):
        coeffs.max_k = 3
    with pytest.raises(TypeError):
        coeffs.metadata["b_sign"] = 1


def test_coeff_set_json_contract():
    coeffs = coeff_set_paris(3)
    data = coeffs.to_dict()
    assert data["family"] == "paris"
    assert data["metadata"] == {"variable": "chi", "b_sign": -1, "weights": "s3"}
    assert data["A"][1] == [{"n": "0", "d": "1"}, {"n": "1", "d": "2"}, {"n": "0", "d": "1"}, {"n": "1", "d": "6"}]
    restored = CoeffSet.from_dict(data)
    assert restored.A == coeffs.A and restored.B == coeffs.B


def test_dingle_weights():
    assert dingle_chat(3) == RatPoly([0, 2], VarTag.A)
    assert dingle_chat(6) == RatPoly([0, -120, 40], VarTag.A)
    assert alpha_hat(1, 3) == 2
    for k in range(3, 12):
        assert alpha_hat(1, k) == (-1) ** (k + 1) * factorial(k - 1)
    assert alpha_hat(-1, 4) == 0


def test_dingle_plain_convention():
    coeffs = coeff_set_dingle(3)
    assert coeffs.metadata["sign_convention"] == "plain"
    assert coeffs.b_sign == 1
    assert coeffs.var_tag is VarTag.XI
    assert coeffs.A[1] == poly(DINGLE_A1, VarTag.XI)
    assert coeffs.B[1] == poly(DINGLE_B1, VarTag.XI)


def test_dingle_alternating_convention():
    coeffs = coeff_set_dingle(2, convention=SignConvention.ALTERNATING)
    assert coeffs.b_sign == -1
    assert coeffs.A[1] == RatPoly([0, 1, 0, F(1, 3)], VarTag.XI)


def test_values_at_zero():
    p, q = pq_polys(21)
    for k in range(22):
        assert dk_at_zero(k) == (p[k](0), q[k](0)), k
    assert dk_at_zero(4) == (F(1, 8), 0)
    assert dk_at_zero(5) == (0, F(-1, 15))


def test_closed_forms_at_zero_match_polynomials():
    coeffs = coeff_set_paris(9)
    for k in range(4):
        assert a_even_at_zero(k) == coeffs.A[2 * k](0)
        assert b_odd_at_zero(k) == coeffs.B[2 * k + 1](0)


def test_e_coefficients():
    assert e_coeffs(7) == list(E_LIST)
    assert e_coeffs(0) == [F(1, 3)]


def test_stirling_gamma():
    assert [stirling_gamma(k) for k in range(5)] == list(STIRLING_GAMMA)
