"""3-associated Stirling numbers and the Taylor coefficients c_k(z) of H(tau; z)."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from types import MappingProxyType
from typing import Dict, List, Mapping, Tuple

from .rational import RatPoly, VarTag, series_exp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StirlingTable:
    """Immutable table of S_3(k, j) for 0 <= k <= max_k, 0 <= j <= k // 3."""
    max_k: int
    entries: Mapping[Tuple[int, int], int] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def get(self, k: int, j: int) -> int:
        if k > self.max_k:
            raise KeyError(f"k={k} is beyond this table (max_k={self.max_k})")
        return self.entries.get((k, j), 0)

    def row(self, k: int) -> List[int]:
        return [self.get(k, j) for j in range(k // 3 + 1)]

    def to_dict(self) -> Dict:
        return {
            "family": "s3",
            "max_k": self.max_k,
            "rows": {str(k): [str(v) for v in self.row(k)] for k in range(self.max_k + 1)},
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "StirlingTable":
        entries = {}
        for k, row in data["rows"].items():
            for j, v in enumerate(row):
                entries[(int(k), j)] = int(v)
        return cls(int(data["max_k"]), entries)


@lru_cache(maxsize=None)
def _recurrence_rows(max_k: int) -> Tuple[Tuple[int, ...], ...]:
    # S3(n+1, j) = j S3(n, j) + C(n, 2) S3(n-2, j-1)
    rows: List[List[int]] = [[1]]
    for n in range(max_k):
        nxt = [0] * ((n + 1) // 3 + 1)
        for j in range(1, len(nxt)):
            same = rows[n][j] if j < len(rows[n]) else 0
            prev = 0
            if n >= 2 and j - 1 < len(rows[n - 2]):
                prev = rows[n - 2][j - 1]
            nxt[j] = j * same + comb(n, 2) * prev
        rows.append(nxt)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _c_polys(max_k: int) -> Tuple[RatPoly, ...]:
    # c_{k+1} = -z sum_{j=2..k} C(k, j) c_{k-j}, c_0 = 1, c_1 = c_2 = 0
    polys = [RatPoly.constant(1, VarTag.Z), RatPoly.zero(VarTag.Z), RatPoly.zero(VarTag.Z)]
    for k in range(2, max_k):
        acc = RatPoly.zero(VarTag.Z)
        for j in range(2, k + 1):
            acc = acc + polys[k - j].scale(comb(k, j))
        polys.append(-acc.shift(1))
    return tuple(polys[: max_k + 1])


def c_poly(k: int) -> RatPoly:
    """
    Taylor coefficient c_k(z) of H(tau; z) = exp(-z (e^tau - 1 - tau - tau^2/2)).

    Integer coefficients, degree k // 3, generated by the three-term
    convolution recurrence.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return _c_polys(max(k, 2))[k]


def stirling3_from_cpoly(k: int, j: int) -> int:
    """S_3(k, j) read off c_k(z) = sum_j (-1)^j S_3(k, j) z^j."""
    if k < 0 or j < 0:
        raise ValueError("k and j must be nonnegative")
    c = c_poly(k).coeff(j)
    value = (-1) ** j * c
    if value.denominator != 1:
        raise ArithmeticError(f"c_{k}(z) has a non-integer coefficient at z^{j}")
    return int(value)


def stirling3(k: int, j: int) -> int:
    """
    3-associated Stirling number of the second kind S_3(k, j).

    Counts partitions of k items into j blocks of size >= 3. Out-of-range j
    returns 0 and S_3(k, 0) is the Kronecker delta.
    """
    if k < 0 or j < 0:
        raise ValueError("k and j must be nonnegative")
    if j > k // 3:
        return 0
    return _recurrence_rows(k)[k][j]


@lru_cache(maxsize=None)
def stirling_table(max_k: int) -> StirlingTable:
    """
    Build the immutable S_3 table up to max_k.

    The production route is the associated-Stirling recurrence; in debug runs
    every entry is also checked against the c_k(z) coefficient route.
    """
    if max_k < 0:
        raise ValueError(f"max_k must be nonnegative, got {max_k}")
    rows = _recurrence_rows(max_k)
    entries = {(k, j): v for k, row in enumerate(rows) for j, v in enumerate(row)}

    if __debug__:
        for (k, j), v in entries.items():
            assert v == stirling3_from_cpoly(k, j), f"S3({k},{j}) routes disagree"

    logger.debug(f"Built S3 table up to k={max_k}")
    return StirlingTable(max_k, entries)


def stirling3_generating(order: int) -> List[RatPoly]:
    """
    Expand exp(u (t^3/3! + t^4/4! + ...)) to t**order.

    Entry k is the polynomial sum_j S_3(k, j) u^j / k!; used to check the
    table against its generating function.
    """
    g = [Fraction(0)] * 3 + [Fraction(1, factorial(n)) for n in range(3, order + 1)]
    return series_exp(g, order, VarTag.U)
