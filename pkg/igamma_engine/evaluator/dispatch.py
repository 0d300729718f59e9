"""Method selection, normalisation and identity-derived partners."""
import logging
import math
from typing import Callable, Dict, Optional, Tuple

import mpmath as mp

from ..config import get_config
from ..exceptions import PrecisionCeilingError
from .base import Branch, EvalRequest, EvalResult, Method, PrecisionCtx, Side, Target
from .expansions import ExpansionSum, check_domain, get_expansion, q_diagonal

logger = logging.getLogger(__name__)


def resolve_method(req: EvalRequest) -> Method:
    """auto: diagonal series when |chi| is negligible, Paris otherwise."""
    if req.method is not Method.AUTO:
        return req.method
    if abs(req.chi) <= get_config().auto_diagonal_chi:
        return Method.DIAGONAL
    return Method.PARIS


def _round(value: mp.mpf, bits: int) -> mp.mpf:
    with mp.workprec(bits):
        return +value


def _complement(
    primary: Callable[[int], mp.mpf],
    bits: int,
    max_bits: int,
    guard: int,
    exact_identity: bool,
) -> Tuple[mp.mpf, mp.mpf, int]:
    """
    (F, 1 - F, bits used) for the normalised primary F.

    With exact_identity the partner is taken from F rounded to bits, so the
    pair adds to exactly 1 at that precision. That is only done while at most
    one bit cancels; otherwise F is recomputed with the cancelled bits added.
    """
    w = bits + guard
    frac = primary(w)
    with mp.workprec(w):
        rest = 1 - frac
    if rest == 0:
        raise PrecisionCeilingError(max_bits + 1, max_bits, what="identity-derived partner")
    lost = max(0.0, float(mp.log(abs(frac) / abs(rest), 2)))

    if lost <= 1:
        if exact_identity:
            frac = _round(frac, bits)
            with mp.workprec(bits):
                rest = 1 - frac
        return frac, rest, w

    needed = bits + math.ceil(lost) + 2 * guard
    if needed > max_bits:
        raise PrecisionCeilingError(needed, max_bits, what="identity-derived partner")
    logger.debug(f"identity partner loses {lost:.1f} bits, recomputing at {needed}")
    frac = primary(needed)
    with mp.workprec(needed):
        rest = 1 - frac
    return frac, rest, needed


def eval(req: EvalRequest) -> EvalResult:
    """
    Evaluate req.target at (req.a, req.z).

    For z > a the upper function is expanded and for z < a the lower one;
    the other follows from P + Q = 1. Normalisation by Gamma(a) uses
    log-gamma at the same precision. Near z = a the auto method uses the
    diagonal series for Q(a, a).

    Raises:
        DomainError, BranchError, PrecisionCeilingError, ConvergenceError
    """
    check_domain(req.a, req.z)
    config = get_config()
    ctx = req.precision
    bits, guard = ctx.bits, config.guard_bits
    a, z = req.a, req.z
    method = resolve_method(req)
    log_bits = math.ceil(math.log2(max(2.0, abs(a * math.log(z)), z, a)))

    def ctx_at(w: int) -> PrecisionCtx:
        return PrecisionCtx(bits=w, max_bits=max(w, ctx.max_bits))

    def log_gamma(w: int) -> mp.mpf:
        with mp.workprec(w + log_bits):
            return mp.loggamma(mp.mpf(a))

    runs: Dict[int, object] = {}

    if method is Method.DIAGONAL:
        side = Side.UPPER
        branch = Branch.DIAGONAL

        def run(w: int) -> EvalResult:
            if w not in runs:
                runs[w] = q_diagonal(a, req.m, ctx_at(w))
            return runs[w]

        def primary(w: int) -> mp.mpf:
            return run(w).value

        def primary_raw(w: int) -> mp.mpf:
            with mp.workprec(w + log_bits):
                return mp.exp(log_gamma(w)) * primary(w)

        head = run(bits + guard)
        variable = req.chi
        err = head.err_estimate + abs(req.chi) / math.sqrt(2 * math.pi) / float(head.value)
        bits_used = head.precision_bits_used
    else:
        expansion = get_expansion(method)
        # Gamma(a, z) = Gamma((a - 1) + 1, z) for the Dingle form
        a_exp = a - 1 if method is Method.DINGLE else a
        side = Side.UPPER if z >= a_exp else Side.LOWER
        branch = Branch.UPPER_FIRST if side is Side.UPPER else Branch.LOWER_FIRST

        def run(w: int) -> ExpansionSum:
            if w not in runs:
                runs[w] = expansion.expand(a_exp, z, side, req.m, ctx_at(w))
            return runs[w]

        def primary(w: int) -> mp.mpf:
            return run(w).value(log_gamma(w))

        def primary_raw(w: int) -> mp.mpf:
            return run(w).value()

        head = run(bits + guard)
        variable = head.variable
        err = head.err_estimate
        bits_used = head.bits_used

    normalised_primary = Target.Q if side is Side.UPPER else Target.P
    raw_primary = Target.UPPER if side is Side.UPPER else Target.LOWER

    if req.target is normalised_primary:
        value = primary(bits + guard)
    elif req.target is raw_primary:
        value = primary_raw(bits + guard)
    else:
        normalised = req.target in (Target.P, Target.Q)
        frac, rest, used = _complement(primary, bits, ctx.max_bits, guard, normalised)
        bits_used = max(bits_used, used)
        err = err * float(abs(frac) / abs(rest))
        value = rest
        if not normalised:
            with mp.workprec(used + log_bits):
                value = mp.exp(log_gamma(used)) * rest

    result = EvalResult(
        value=_round(value, bits),
        target=req.target,
        branch=branch,
        chi_or_xi=float(variable),
        m_used=head.m_used,
        precision_bits_used=bits_used,
        err_estimate=float(err),
        method=method,
        bits=bits,
    )
    logger.debug(
        f"eval {req.target.value}(a={a}, z={z}) via {method.value}/{branch.value}: "
        f"m={result.m_used}, err={result.err_estimate:.3g}"
    )
    return result


def regularized_q(
    a: float,
    z: float,
    method: Method = Method.AUTO,
    m: Optional[int] = None,
    bits: int = 53,
) -> EvalResult:
    """Q(a, z) = Gamma(a, z) / Gamma(a)."""
    req = EvalRequest(a=a, z=z, target=Target.Q, method=method, m=m, precision=PrecisionCtx(bits=bits))
    return eval(req)


def regularized_p(
    a: float,
    z: float,
    method: Method = Method.AUTO,
    m: Optional[int] = None,
    bits: int = 53,
) -> EvalResult:
    """P(a, z) = gamma(a, z) / Gamma(a)."""
    req = EvalRequest(a=a, z=z, target=Target.P, method=method, m=m, precision=PrecisionCtx(bits=bits))
    return eval(req)
