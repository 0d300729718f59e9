from math import comb, factorial

import pytest

from igamma_engine.coeffs import (
    RatPoly,
    StirlingTable,
    VarTag,
    c_poly,
    stirling3,
    stirling3_from_cpoly,
    stirling3_generating,
    stirling_table,
)
from igamma_engine.pipeline.reference_tables import S3_ROWS


def test_published_rows():
    for k, row in S3_ROWS.items():
        assert [stirling3(k, j) for j in range(1, len(row) + 1)] == list(row), f"row {k}"


def test_edges():
    assert stirling3(0, 0) == 1
    assert all(stirling3(k, 0) == 0 for k in range(1, 12))
    assert stirling3(7, 3) == 0
    assert stirling3(2, 1) == 0
    with pytest.raises(ValueError):
        stirling3(-1, 0)


@pytest.mark.parametrize("j", range(1, 7))
def test_all_blocks_of_three(j):
    # S3(3j, j) = (3j)! / (6^j j!)
    assert stirling3(3 * j, j) == factorial(3 * j) // (6**j * factorial(j))


@pytest.mark.parametrize("n", range(6, 21))
def test_two_blocks(n):
    # subsets of size 3..n-3, halved
    assert stirling3(n, 2) == (2**n - 2 * (1 + n + comb(n, 2))) // 2


def test_recurrence_matches_cpoly_route():
    for k in range(31):
        for j in range(k // 3 + 1):
            assert stirling3(k, j) == stirling3_from_cpoly(k, j), (k, j)


def test_c_poly():
    z = VarTag.Z
    assert c_poly(0) == RatPoly.constant(1, z)
    assert c_poly(1).is_zero() and c_poly(2).is_zero()
    assert c_poly(3) == RatPoly([0, -1], z)
    assert c_poly(6) == RatPoly([0, -1, 10], z)
    assert c_poly(12).degree == 4
    assert all(c.denominator == 1 for c in c_poly(20).coeffs)


def test_generating_function():
    out = stirling3_generating(20)
    for k in range(21):
        for j in range(k // 3 + 1):
            assert out[k].coeff(j) * factorial(k) == stirling3(k, j)


def test_table():
    table = stirling_table(20)
    assert table.row(20) == [0, 1, 524077, 550478241, 29844199346, 172096749825, 89625135600]
    assert table.get(9, 5) == 0
    with pytest.raises(KeyError):
        table.get(21, 1)
    with pytest.raises(TypeError):
        table.entries[(3, 1)] = 2

    data = table.to_dict()
    assert data["family"] == "s3"
    assert data["rows"]["6"] == ["0", "1", "10"]
    assert StirlingTable.from_dict(data).row(18) == table.row(18)
