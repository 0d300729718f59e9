"""
Uniform asymptotic expansions of the incomplete gamma functions.

Paris form, in inverse powers of sqrt(z) with chi = (z - a)/sqrt(z):

    Gamma(a, z) = z^(a-1/2) e^-z { sum_k C_k(chi) z^(-k/2) },  z >= a
    gamma(a, z) = z^(a-1/2) e^-z { sum_k (-1)^k C_k(-chi) z^(-k/2) },  z <= a

with C_k(x) = A_k(x) d0(x) - B_k(x). Dingle form, in inverse powers of
sqrt(a) with xi = (z - a)/sqrt(a), for Gamma(a+1, z) and gamma(a+1, z)
with prefactor z^(a+1) a^(-1/2) e^-z. The diagonal series gives Q(a, a).
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import mpmath as mp

from ..coeffs import CoeffSet, SignConvention, coeff_set_dingle, coeff_set_paris, e_coeffs
from ..config import get_config
from ..exceptions import BranchError, ConvergenceError, DomainError
from .base import Branch, EvalResult, Method, PrecisionCtx, Side, Target
from .parabolic import CancellationAssembler, to_mpf

logger = logging.getLogger(__name__)


def check_domain(a: float, z: float) -> None:
    if not (math.isfinite(a) and math.isfinite(z)):
        raise DomainError(f"a and z must be finite, got a={a}, z={z}")
    if a <= 0:
        raise DomainError(f"a must be positive, got a={a}")
    if z <= 0:
        raise DomainError(f"z must be positive, got z={z}")


def truncated_sum(
    term: Callable[[int], mp.mpf],
    m: Optional[int],
    cap: int,
    bits: int,
) -> Tuple[mp.mpf, int, mp.mpf]:
    """
    Sum an asymptotic series and return (total, m_used, first_omitted).

    With m given, terms 0..m are summed. Otherwise terms are added until the
    next one would be larger than the last nonzero one, a term falls below
    2^-bits of the running total, or cap is reached. term(k) is called for
    k up to the returned m_used + 1.
    """
    cache: Dict[int, mp.mpf] = {}

    def t(k: int) -> mp.mpf:
        if k not in cache:
            cache[k] = term(k)
        return cache[k]

    if m is not None:
        return mp.fsum(t(k) for k in range(m + 1)), m, t(m + 1)

    tol = mp.ldexp(1, -bits)
    total = t(0)
    prev = abs(total)
    m_used = 0
    for k in range(1, cap + 1):
        tk = t(k)
        if tk != 0 and prev != 0 and abs(tk) > prev:
            return total, m_used, tk
        total += tk
        m_used = k
        if tk != 0:
            prev = abs(tk)
            if abs(tk) <= tol * abs(total):
                break
    return total, m_used, t(m_used + 1)


@dataclass
class ExpansionSum:
    """The bracketed sum of an expansion together with its log prefactor."""
    total: mp.mpf
    log_prefactor: mp.mpf
    side: Side
    variable: float
    m_used: int
    omitted: mp.mpf
    bits: int
    work_bits: int
    bits_used: int

    @property
    def err_estimate(self) -> float:
        if self.omitted == 0:
            return 0.0
        return float(abs(self.omitted) / abs(self.total))

    def value(self, log_norm: mp.mpf = 0) -> mp.mpf:
        """exp(log_prefactor - log_norm) * total at the working precision."""
        with mp.workprec(self.work_bits):
            return mp.exp(self.log_prefactor - log_norm) * self.total


class UniformExpansion(ABC):
    """Shared machinery of the Paris and Dingle expansions."""

    method: Method

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def coefficients(self, k_max: int) -> CoeffSet:
        pass

    @abstractmethod
    def variable(self, a: mp.mpf, z: mp.mpf) -> mp.mpf:
        """Transition variable (chi or xi)."""

    @abstractmethod
    def scale(self, a: mp.mpf, z: mp.mpf) -> mp.mpf:
        """The quantity whose inverse powers carry the series."""

    @abstractmethod
    def log_prefactor(self, a: mp.mpf, z: mp.mpf) -> mp.mpf:
        pass

    def function_name(self, side: Side) -> str:
        return f"gamma_{side.value}_{self.name}"

    def expand(
        self,
        a: float,
        z: float,
        side: Side,
        m: Optional[int] = None,
        precision: Optional[PrecisionCtx] = None,
    ) -> ExpansionSum:
        """
        Evaluate the bracketed sum and the log prefactor.

        Raises:
            DomainError: a or z nonpositive or non-finite
            BranchError: side does not match the sign of z - a
            ConvergenceError: the truncated sum is nonpositive
        """
        check_domain(a, z)
        side = Side(side)
        if side is Side.UPPER and z < a:
            raise BranchError(
                f"{self.function_name(side)} needs z >= a (a={a}, z={z})",
                use_instead=self.function_name(Side.LOWER),
            )
        if side is Side.LOWER and z > a:
            raise BranchError(
                f"{self.function_name(side)} needs z <= a (a={a}, z={z})",
                use_instead=self.function_name(Side.UPPER),
            )

        ctx = precision or PrecisionCtx()
        config = get_config()
        guard = config.guard_bits
        target_bits = ctx.bits + guard
        log_bits = math.ceil(math.log2(max(1.0, abs(a * math.log(z)), z)))
        work_bits = target_bits + log_bits

        k_top = (m if m is not None else config.paris_m_cap) + 1
        coeffs = self.coefficients(k_top)

        with mp.workprec(work_bits + guard):
            am, zm = mp.mpf(a), mp.mpf(z)
            x = self.variable(am, zm)
            s = self.scale(am, zm)
            log_pre = self.log_prefactor(am, zm)

        y = x if side is Side.UPPER else -x
        asm = CancellationAssembler(y, target_bits, ctx.max_bits, coeffs.b_sign)

        def term(k: int) -> mp.mpf:
            c = asm.assemble(coeffs.A[k], coeffs.B[k])
            with mp.workprec(target_bits):
                if side is Side.LOWER and k % 2:
                    c = -c
                return c / s**k

        with mp.workprec(target_bits):
            total, m_used, omitted = truncated_sum(term, m, config.paris_m_cap, target_bits)

        if total <= 0:
            raise ConvergenceError(
                f"{self.function_name(side)} sum is nonpositive at a={a}, z={z} (m={m_used})"
            )
        logger.debug(
            f"{self.function_name(side)}(a={a}, z={z}): m={m_used}, "
            f"variable={mp.nstr(x, 6)}, assembly bits={asm.bits_used}"
        )
        return ExpansionSum(
            total=total,
            log_prefactor=log_pre,
            side=side,
            variable=float(x),
            m_used=m_used,
            omitted=omitted,
            bits=ctx.bits,
            work_bits=work_bits,
            bits_used=max(asm.bits_used, work_bits),
        )

    def evaluate(
        self,
        a: float,
        z: float,
        side: Side,
        m: Optional[int] = None,
        precision: Optional[PrecisionCtx] = None,
    ) -> EvalResult:
        """Unnormalised value of the side the expansion is run on."""
        ctx = precision or PrecisionCtx()
        result = self.expand(a, z, side, m, ctx)
        with mp.workprec(ctx.bits):
            value = +result.value()
        return EvalResult(
            value=value,
            target=Target.UPPER if result.side is Side.UPPER else Target.LOWER,
            branch=Branch.UPPER_FIRST if result.side is Side.UPPER else Branch.LOWER_FIRST,
            chi_or_xi=result.variable,
            m_used=result.m_used,
            precision_bits_used=result.bits_used,
            err_estimate=result.err_estimate,
            method=self.method,
            bits=ctx.bits,
        )


class ParisExpansion(UniformExpansion):
    """Inverse powers of sqrt(z); uniform in a as z grows."""

    method = Method.PARIS

    @property
    def name(self) -> str:
        return "paris"

    def coefficients(self, k_max: int) -> CoeffSet:
        return coeff_set_paris(k_max)

    def variable(self, a, z):
        return (z - a) / mp.sqrt(z)

    def scale(self, a, z):
        return mp.sqrt(z)

    def log_prefactor(self, a, z):
        return (a - mp.mpf(1) / 2) * mp.log(z) - z


class DingleExpansion(UniformExpansion):
    """
    Inverse powers of sqrt(a), for Gamma(a+1, z) and gamma(a+1, z).

    Follows from t = z(1 + u), u = tau / sqrt(a) and
    (1 + u)^a e^(-zu) = exp(-(z - a)u - a u^2/2) exp(a g(u)).
    """

    method = Method.DINGLE

    def __init__(self, convention: Optional[SignConvention] = None):
        self.convention = convention

    @property
    def name(self) -> str:
        return "dingle"

    def coefficients(self, k_max: int) -> CoeffSet:
        return coeff_set_dingle(k_max, convention=self.convention)

    def variable(self, a, z):
        return (z - a) / mp.sqrt(a)

    def scale(self, a, z):
        return mp.sqrt(a)

    def log_prefactor(self, a, z):
        return (a + 1) * mp.log(z) - mp.log(a) / 2 - z


def get_expansion(method: Method, convention: Optional[SignConvention] = None) -> UniformExpansion:
    """Get a uniform expansion by method."""
    method = Method(method)
    if method is Method.PARIS:
        return ParisExpansion()
    if method is Method.DINGLE:
        return DingleExpansion(convention)
    raise ValueError(f"No uniform expansion for method: {method.value}")


def gamma_upper_paris(
    a: float, z: float, m: Optional[int] = None, precision: Optional[PrecisionCtx] = None
) -> EvalResult:
    """Gamma(a, z) for z >= a from the Paris expansion."""
    return ParisExpansion().evaluate(a, z, Side.UPPER, m, precision)


def gamma_lower_paris(
    a: float, z: float, m: Optional[int] = None, precision: Optional[PrecisionCtx] = None
) -> EvalResult:
    """gamma(a, z) for z <= a from the Paris expansion."""
    return ParisExpansion().evaluate(a, z, Side.LOWER, m, precision)


def gamma_dingle(
    a: float,
    z: float,
    m: Optional[int] = None,
    which: Side = Side.UPPER,
    precision: Optional[PrecisionCtx] = None,
    convention: Optional[SignConvention] = None,
) -> EvalResult:
    """
    Gamma(a+1, z) (which=upper, z >= a) or gamma(a+1, z) (which=lower, z <= a).

    Args:
        a: Expansion parameter; the functions are taken at order a + 1
        z: Argument
        m: Truncation order, adaptive when None
        which: Side of the transition point
        precision: Working precision contract
        convention: Coefficient sign convention, DINGLE_SIGN_CONVENTION when None

    Returns:
        EvalResult with chi_or_xi holding xi = (z - a)/sqrt(a)
    """
    return DingleExpansion(convention).evaluate(a, z, Side(which), m, precision)


def q_diagonal(
    a: float, m: Optional[int] = None, precision: Optional[PrecisionCtx] = None
) -> EvalResult:
    """
    Q(a, a) = 1/2 - (2 pi a)^(-1/2) sum_k E_k a^-k.

    P(a, a) is 1 - Q(a, a). The error estimate is the first omitted
    E-term relative to Q.
    """
    check_domain(a, a)
    ctx = precision or PrecisionCtx()
    config = get_config()
    cap = config.diagonal_m_cap
    E = e_coeffs((m if m is not None else cap) + 1)
    work_bits = ctx.bits + config.guard_bits

    with mp.workprec(work_bits):
        am = mp.mpf(a)
        total, m_used, omitted = truncated_sum(
            lambda k: to_mpf(E[k]) / am**k, m, cap, work_bits
        )
        scale = 1 / mp.sqrt(2 * mp.pi * am)
        q = mp.mpf(1) / 2 - scale * total
        err = float(abs(omitted) * scale / abs(q))

    with mp.workprec(ctx.bits):
        value = +q
    logger.debug(f"q_diagonal(a={a}): m={m_used}, err={err:.3g}")
    return EvalResult(
        value=value,
        target=Target.Q,
        branch=Branch.DIAGONAL,
        chi_or_xi=0.0,
        m_used=m_used,
        precision_bits_used=work_bits,
        err_estimate=err,
        method=Method.DIAGONAL,
        bits=ctx.bits,
    )
