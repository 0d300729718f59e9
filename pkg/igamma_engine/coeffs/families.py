"""
Coefficient families of the uniform expansions.

Everything here is exact over the rationals and cached after first use.
CoeffSet instances are immutable once published and may be shared freely.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..config import get_config
from ..exceptions import CoefficientCapError
from .rational import RatPoly, VarTag, series_divide, series_exp
from .stirling import stirling3, stirling_table

logger = logging.getLogger(__name__)


class CoeffFamily(str, Enum):
    PARIS = "paris"
    DINGLE = "dingle"


class SignConvention(str, Enum):
    """
    How the Dingle weights enter the coefficient sums.

    PLAIN uses alpha_j(k) as it comes out of c_hat_k(a) and stores
    B_hat = -sum alpha q, so the series combine as d0*A + B (upper).
    ALTERNATING applies the (-1)^j factor of the Paris sums and combines
    as d0*A - B.
    """
    PLAIN = "plain"
    ALTERNATING = "alternating"


# Fixed once against the reference at (a, z) = (100, 120); the alternating
# choice is kept only so the sign test can show that it diverges.
DINGLE_SIGN_CONVENTION = SignConvention.PLAIN


@dataclass(frozen=True)
class CoeffSet:
    """
    Paired polynomial families A_k, B_k for 0 <= k <= max_k.

    Upper-branch coefficient k is A_k(x) d0(x) + b_sign * B_k(x), where
    b_sign is stored in metadata (Paris: -1).
    """
    family: CoeffFamily
    max_k: int
    A: Tuple[RatPoly, ...]
    B: Tuple[RatPoly, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))

    @property
    def b_sign(self) -> int:
        return int(self.metadata["b_sign"])

    @property
    def var_tag(self) -> VarTag:
        return VarTag(self.metadata["variable"])

    def to_dict(self) -> Dict:
        return {
            "family": self.family.value,
            "max_k": self.max_k,
            "metadata": dict(self.metadata),
            "A": [p.to_dict() for p in self.A],
            "B": [p.to_dict() for p in self.B],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "CoeffSet":
        meta = dict(data["metadata"])
        tag = VarTag(meta["variable"])
        return cls(
            family=CoeffFamily(data["family"]),
            max_k=int(data["max_k"]),
            A=[RatPoly.from_dict(p, tag) for p in data["A"]],
            B=[RatPoly.from_dict(p, tag) for p in data["B"]],
            metadata=meta,
        )


def check_kmax_cap(k_max: int, force: bool = False) -> None:
    """Reject negative orders, and orders above kmax_cap unless forced."""
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    cap = get_config().kmax_cap
    if k_max > cap and not force:
        raise CoefficientCapError(k_max, cap)


@lru_cache(maxsize=None)
def _pq(k_max: int, var_tag: VarTag) -> Tuple[Tuple[RatPoly, ...], Tuple[RatPoly, ...]]:
    # x_{k+1} = (x_{k-1} - var * x_k) / (k + 1)
    def run(seed_prev: int, seed_cur: int) -> List[RatPoly]:
        prev = RatPoly.constant(seed_prev, var_tag)
        cur = RatPoly.constant(seed_cur, var_tag)
        out = [cur]
        for k in range(k_max):
            nxt = (prev - cur.shift(1)).scale(Fraction(1, k + 1))
            prev, cur = cur, nxt
            out.append(cur)
        return out

    return tuple(run(0, 1)), tuple(run(-1, 0))


def pq_polys(k_max: int, var_tag: VarTag = VarTag.CHI) -> Tuple[List[RatPoly], List[RatPoly]]:
    """
    Polynomials p_k, q_k with d_k(x) = p_k(x) d0(x) - q_k(x).

    Both follow the d_k recurrence, seeded (p_-1, p_0) = (0, 1) and
    (q_-1, q_0) = (-1, 0).

    Args:
        k_max: Highest order produced
        var_tag: Variable name on the returned polynomials

    Returns:
        (p, q), each a list of k_max + 1 polynomials
    """
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    p, q = _pq(k_max, VarTag(var_tag))
    return list(p), list(q)


def _combine(
    weights: Dict[Tuple[int, int], Fraction],
    k_max: int,
    var_tag: VarTag,
) -> Tuple[List[RatPoly], List[RatPoly]]:
    """sum_j w(k + 2j, j) {p, q}_{k+2j} for every k <= k_max."""
    p, q = pq_polys(3 * k_max, var_tag)
    A, B = [], []
    for k in range(k_max + 1):
        a_k = RatPoly.zero(var_tag)
        b_k = RatPoly.zero(var_tag)
        for j in range(k + 1):
            w = weights.get((k + 2 * j, j), 0)
            if w == 0:
                continue
            a_k = a_k + p[k + 2 * j].scale(w)
            b_k = b_k + q[k + 2 * j].scale(w)
        A.append(a_k)
        B.append(b_k)
    return A, B


@lru_cache(maxsize=None)
def _paris(k_max: int) -> CoeffSet:
    table = stirling_table(3 * k_max)
    weights = {
        (n, j): Fraction((-1) ** j * table.get(n, j))
        for n in range(3 * k_max + 1)
        for j in range(n // 3 + 1)
    }
    A, B = _combine(weights, k_max, VarTag.CHI)
    _check_degrees(A, B)
    logger.debug(f"Generated Paris coefficients up to k={k_max}")
    return CoeffSet(
        family=CoeffFamily.PARIS,
        max_k=k_max,
        A=A,
        B=B,
        metadata={"variable": VarTag.CHI.value, "b_sign": -1, "weights": "s3"},
    )


def coeff_set_paris(k_max: int, force: bool = False) -> CoeffSet:
    """
    A_k(chi), B_k(chi) = sum_{j=0..k} (-1)^j S_3(k+2j, j) {p, q}_{k+2j}(chi).

    Raises:
        CoefficientCapError: k_max above the configured cap without force
    """
    check_kmax_cap(k_max, force)
    return _paris(k_max)


def _check_degrees(A: List[RatPoly], B: List[RatPoly]) -> None:
    for k, (a_k, b_k) in enumerate(zip(A, B)):
        if a_k.degree > 3 * k or (k >= 1 and b_k.degree > 3 * k - 1):
            raise ArithmeticError(f"coefficient degree bound broken at k={k}")


@lru_cache(maxsize=None)
def _chat_series(order: int) -> Tuple[RatPoly, ...]:
    # g(t) = log(1 + t) - t + t^2/2 = sum_{n>=3} (-1)^(n+1) t^n / n
    g = [Fraction(0)] * 3 + [Fraction((-1) ** (n + 1), n) for n in range(3, order + 1)]
    return tuple(series_exp(g, order, VarTag.A))


def dingle_chat(k: int) -> RatPoly:
    """
    c_hat_k(a) = k! [t^k] (1 + t)^a exp(a(-t + t^2/2)), a polynomial in a
    of degree k // 3.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return _chat_series(k)[k].scale(factorial(k))


def alpha_hat(j: int, k: int) -> Fraction:
    """Coefficient of a^j in c_hat_k(a)."""
    if j < 0:
        return Fraction(0)
    return dingle_chat(k).coeff(j)


@lru_cache(maxsize=None)
def _dingle(k_max: int, convention: SignConvention) -> CoeffSet:
    chats = _chat_series(3 * k_max)
    weights = {}
    for n in range(3 * k_max + 1):
        c = chats[n].scale(factorial(n))
        for j in range(n // 3 + 1):
            w = c.coeff(j)
            if convention is SignConvention.ALTERNATING:
                w *= (-1) ** j
            weights[(n, j)] = w
    A, raw_B = _combine(weights, k_max, VarTag.XI)
    if convention is SignConvention.PLAIN:
        B = [-b for b in raw_B]
        b_sign = 1
    else:
        B = raw_B
        b_sign = -1
    _check_degrees(A, B)
    logger.debug(f"Generated Dingle coefficients up to k={k_max} ({convention.value})")
    return CoeffSet(
        family=CoeffFamily.DINGLE,
        max_k=k_max,
        A=A,
        B=B,
        metadata={
            "variable": VarTag.XI.value,
            "b_sign": b_sign,
            "weights": "alpha_hat",
            "sign_convention": convention.value,
        },
    )


def coeff_set_dingle(
    k_max: int,
    force: bool = False,
    convention: Optional[SignConvention] = None,
) -> CoeffSet:
    """
    A_hat_k(xi), B_hat_k(xi): the Paris sums with S_3 replaced by alpha_hat.

    The default convention is DINGLE_SIGN_CONVENTION. A_hat_1 is
    -xi - xi^3/3 and B_hat_1 is 2/3 + xi^2/3 under it.
    """
    check_kmax_cap(k_max, force)
    return _dingle(k_max, SignConvention(convention or DINGLE_SIGN_CONVENTION))


def double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def dk_at_zero(k: int) -> Tuple[Fraction, Fraction]:
    """
    Exact (p_k(0), q_k(0)), so that d_k(0) = p_k(0) sqrt(pi/2) - q_k(0).

    p_2n(0) = 1 / (2^n n!) and q_{2n+1}(0) = -1 / (2n+1)!!; the other
    parity vanishes.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k % 2 == 0:
        n = k // 2
        return Fraction(1, 2**n * factorial(n)), Fraction(0)
    return Fraction(0), Fraction(-1, double_factorial(k))


def a_even_at_zero(k: int) -> Fraction:
    """A_{2k}(0) from the closed forms of p_{2n}(0), without building polynomials."""
    return sum(
        (
            (-1) ** j * stirling3(2 * k + 2 * j, j) * dk_at_zero(2 * k + 2 * j)[0]
            for j in range(2 * k + 1)
        ),
        Fraction(0),
    )


def b_odd_at_zero(k: int) -> Fraction:
    """B_{2k+1}(0) from the closed forms of q_{2n+1}(0)."""
    n = 2 * k + 1
    return sum(
        ((-1) ** j * stirling3(n + 2 * j, j) * dk_at_zero(n + 2 * j)[1] for j in range(n + 1)),
        Fraction(0),
    )


def stirling_gamma(k: int) -> Fraction:
    """Stirling coefficient gamma_k = (-1)^k A_{2k}(0)."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    coeffs = coeff_set_paris(2 * k, force=True)
    return (-1) ** k * coeffs.A[2 * k](0)


@lru_cache(maxsize=None)
def _e_coeffs(k_max: int) -> Tuple[Fraction, ...]:
    coeffs = coeff_set_paris(2 * k_max + 1, force=True)
    num = [coeffs.B[2 * k + 1](0) for k in range(k_max + 1)]
    den = [coeffs.A[2 * k](0) for k in range(k_max + 1)]
    return tuple(series_divide(num, den, k_max))


def e_coeffs(k_max: int, force: bool = False) -> List[Fraction]:
    """
    E_0..E_k_max of Q(a, a) = 1/2 - (2 pi a)^(-1/2) sum E_k a^-k.

    Exact quotient of sum B_{2k+1}(0) x^k by sum A_{2k}(0) x^k.
    """
    check_kmax_cap(k_max, force)
    return list(_e_coeffs(k_max))
