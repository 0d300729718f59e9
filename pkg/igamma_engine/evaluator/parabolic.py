"""
Parabolic cylinder building blocks d_k(x) = exp(x^2/4) D_{-k-1}(x).

d0 comes from the scaled complementary error function. Higher orders come
either from the forward recurrence (moderate x) or from p_k(x) d0(x) - q_k(x)
assembled in as much working precision as its cancellation needs.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import mpmath as mp
import numpy as np
from scipy.special import erfcx

from ..coeffs import RatPoly, coeff_set_paris, pq_polys
from ..config import get_config
from ..exceptions import ConvergenceError, DomainError, PrecisionCeilingError
from .base import PrecisionCtx

logger = logging.getLogger(__name__)

SQRT_HALF_PI = math.sqrt(math.pi / 2)
SQRT_TWO_PI = math.sqrt(2 * math.pi)


def to_mpf(q: Fraction) -> mp.mpf:
    """Round an exact rational to the current mpmath precision."""
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


def polyval_mp(poly: RatPoly, x: mp.mpf) -> mp.mpf:
    """Evaluate an exact polynomial at the current mpmath precision."""
    if poly.is_zero():
        return mp.mpf(0)
    return mp.polyval([to_mpf(c) for c in reversed(poly.coeffs)], x)


def _d0_double(x: float) -> float:
    if x >= 0:
        return SQRT_HALF_PI * float(erfcx(x / math.sqrt(2)))
    with np.errstate(over="ignore"):
        big = SQRT_TWO_PI * np.exp(np.float64(x) * x / 2)
    return float(big) - _d0_double(-x)


def d0(x, precision: Optional[PrecisionCtx] = None) -> mp.mpf:
    """
    d0(x) = sqrt(pi/2) exp(x^2/2) erfc(x / sqrt(2)).

    At 53 bits the value comes from scipy's erfcx, reflected for x < 0. When
    that overflows (x below about -37.6) the mpmath route takes over, whose
    exponent range is unbounded.

    Args:
        x: Finite real argument (float or mpf)
        precision: Requested precision; 53 bits when omitted

    Returns:
        d0(x) rounded to precision.bits
    """
    bits = precision.bits if precision else 53
    if not mp.isfinite(x):
        raise DomainError(f"d0 needs a finite argument, got {x}")

    if bits <= 53 and isinstance(x, (int, float)):
        value = _d0_double(float(x))
        if math.isfinite(value):
            return mp.mpf(value)
        logger.debug(f"d0({x}) overflowed in double precision, switching to mpmath")

    with mp.workprec(bits + get_config().guard_bits):
        x = mp.mpf(x)
        value = mp.sqrt(mp.pi / 2) * mp.exp(x * x / 2) * mp.erfc(x / mp.sqrt(2))
    with mp.workprec(bits):
        return +value


class CancellationAssembler:
    """
    Evaluates A(x) d0(x) + b_sign * B(x) to a requested number of bits.

    Each coefficient starts at bits + guard. The bits lost to cancellation,
    log2(max(|A d0|, |B|) / |result|), are measured at that precision; if
    they eat into the target the coefficient is recomputed at
    max(2w, bits + lost + 2 guard), up to max_bits.

    One instance belongs to one call; d0 is cached per working precision.
    """

    def __init__(
        self,
        x,
        bits: int,
        max_bits: Optional[int] = None,
        b_sign: int = -1,
        guard_bits: Optional[int] = None,
    ):
        config = get_config()
        self.x = x if isinstance(x, mp.mpf) else mp.mpf(x)
        self.bits = bits
        self.max_bits = max_bits or config.max_bits
        self.b_sign = b_sign
        self.guard = config.guard_bits if guard_bits is None else guard_bits
        self.bits_used = 0
        self._d0: Dict[int, mp.mpf] = {}

    def d0_at(self, w: int) -> mp.mpf:
        if w not in self._d0:
            self._d0[w] = d0(self.x, PrecisionCtx(bits=max(w, 53), max_bits=max(w, 53)))
        return self._d0[w]

    def assemble(self, A: RatPoly, B: RatPoly) -> mp.mpf:
        w = min(self.bits + self.guard, self.max_bits)
        while True:
            with mp.workprec(w):
                a_part = polyval_mp(A, self.x) * self.d0_at(w)
                b_part = self.b_sign * polyval_mp(B, self.x)
                value = a_part + b_part
                magnitude = max(abs(a_part), abs(b_part))
                if magnitude == 0:
                    self.bits_used = max(self.bits_used, w)
                    return mp.mpf(0)
                if value == 0:
                    lost = w
                else:
                    lost = max(0, int(mp.ceil(mp.log(magnitude / abs(value), 2))))

            if lost <= w - self.bits - self.guard:
                self.bits_used = max(self.bits_used, w)
                with mp.workprec(self.bits):
                    return +value

            required = self.bits + lost + 2 * self.guard
            if w >= self.max_bits:
                raise PrecisionCeilingError(required, self.max_bits)
            nxt = min(max(2 * w, required), self.max_bits)
            logger.debug(f"{lost} bits cancel at x={mp.nstr(self.x, 8)}, w {w} -> {nxt}")
            w = nxt


def paris_coefficient(k: int, x, precision: Optional[PrecisionCtx] = None) -> mp.mpf:
    """C_k(x) = A_k(x) d0(x) - B_k(x), escalated as needed."""
    ctx = precision or PrecisionCtx()
    coeffs = coeff_set_paris(k)
    return CancellationAssembler(x, ctx.bits, ctx.max_bits, coeffs.b_sign).assemble(
        coeffs.A[k], coeffs.B[k]
    )


def dk_sequence(x, k_max: int, precision: Optional[PrecisionCtx] = None) -> List[mp.mpf]:
    """
    d_0(x) .. d_k_max(x).

    For x <= chi_star the forward recurrence d_{k+1} = (d_{k-1} - x d_k)/(k+1)
    runs from d_{-1} = 1 with extra bits covering its growth; above chi_star
    each d_k is p_k(x) d0(x) - q_k(x) from the cancellation assembler.

    Raises:
        PrecisionCeilingError: cancellation needs more than max_bits
        ConvergenceError: a value came out nonpositive
    """
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    ctx = precision or PrecisionCtx()
    config = get_config()

    if x <= config.chi_star:
        # the recurrence loses about x^2/2 nats for x > 0
        extra = 32 + (math.ceil(float(x) ** 2 / (2 * math.log(2))) if x > 0 else 0)
        w = ctx.bits + extra
        with mp.workprec(w):
            xm = mp.mpf(x)
            prev, cur = mp.mpf(1), d0(x, PrecisionCtx(bits=w, max_bits=w))
            raw = [cur]
            for k in range(k_max):
                prev, cur = cur, (prev - xm * cur) / (k + 1)
                raw.append(cur)
        logger.debug(f"d_k({mp.nstr(x, 8)}) by forward recurrence at {w} bits")
    else:
        p, q = pq_polys(k_max)
        asm = CancellationAssembler(x, ctx.bits, ctx.max_bits, b_sign=-1)
        raw = [asm.assemble(p[k], q[k]) for k in range(k_max + 1)]
        logger.debug(f"d_k({mp.nstr(x, 8)}) assembled, up to {asm.bits_used} bits")

    with mp.workprec(ctx.bits):
        values = [+v for v in raw]
    for k, v in enumerate(values):
        if v <= 0:
            raise ConvergenceError(f"d_{k}({x}) came out nonpositive ({v})")
    return values


def recurrence_residual(values: Sequence[mp.mpf], x) -> List[mp.mpf]:
    """(k+1) d_{k+1} + x d_k - d_{k-1} for k = 0 .. len(values) - 2, with d_{-1} = 1."""
    full = [mp.mpf(1)] + list(values)
    x = mp.mpf(x)
    return [(k + 1) * full[k + 2] + x * full[k + 1] - full[k] for k in range(len(values) - 1)]


def large_chi_dk(x, k: int) -> mp.mpf:
    """Two-term large-argument form x^{-k-1} (1 - (k+1)(k+2) / (2 x^2))."""
    x = mp.mpf(x)
    return x ** (-k - 1) * (1 - mp.mpf((k + 1) * (k + 2)) / (2 * x * x))


def assemble_naive(A: RatPoly, B: RatPoly, x: float, b_sign: int = -1) -> float:
    """A(x) d0(x) + b_sign * B(x) in plain float64, with no cancellation control."""
    a_coeffs = np.array([float(c) for c in reversed(A.coeffs)] or [0.0])
    b_coeffs = np.array([float(c) for c in reversed(B.coeffs)] or [0.0])
    return float(np.polyval(a_coeffs, x) * _d0_double(x) + b_sign * np.polyval(b_coeffs, x))


def naive_dk(k: int, x: float) -> float:
    p, q = pq_polys(k)
    return assemble_naive(p[k], q[k], x)


def naive_paris_coefficient(k: int, x: float) -> float:
    coeffs = coeff_set_paris(k)
    return assemble_naive(coeffs.A[k], coeffs.B[k], x, coeffs.b_sign)
