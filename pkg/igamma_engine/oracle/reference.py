"""
High-precision reference values, independent of the evaluator.

Nothing here touches the expansion coefficients or the d_k machinery: the
incomplete gamma functions come from the Kummer series and the Legendre
continued fraction, d_k from direct quadrature of its integral. Every value
is computed at P and 2P bits and the agreement is reported as
verified_bits.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import mpmath as mp

from ..config import get_config
from ..exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleValue:
    """Reference value with the number of bits two independent runs agree on."""
    value: mp.mpf
    bits: int
    verified_bits: int

    def __float__(self) -> float:
        return float(self.value)


def _check(a, z) -> None:
    if not (mp.isfinite(a) and mp.isfinite(z)) or a <= 0 or z <= 0:
        raise DomainError(f"the oracle needs finite a > 0 and z > 0, got a={a}, z={z}")


def _extra_bits(a, z) -> int:
    # exp(a log z - z) and Gamma(a) need this many bits above the target
    a, z = float(a), float(z)
    return math.ceil(math.log2(max(2.0, abs(a * math.log(z)), z, a)))


def _log_front(a: mp.mpf, z: mp.mpf) -> mp.mpf:
    return a * mp.log(z) - z


def _lower_series(a: mp.mpf, z: mp.mpf, max_iter: int) -> mp.mpf:
    """gamma(a, z) = z^a e^-z sum_n z^n / (a (a+1) ... (a+n)) at the current precision."""
    eps = mp.eps
    term = 1 / a
    total = term
    ap = a
    for _ in range(max_iter):
        ap += 1
        term *= z / ap
        total += term
        if abs(term) < abs(total) * eps:
            return mp.exp(_log_front(a, z)) * total
    raise ConvergenceError(f"lower series for a={a}, z={z} did not converge in {max_iter} terms")


def _upper_fraction(a: mp.mpf, z: mp.mpf, max_iter: int) -> mp.mpf:
    """Gamma(a, z) by modified Lentz on the continued fraction, for z > a + 1."""
    eps = mp.eps
    tiny = mp.ldexp(1, -4 * mp.mp.prec)
    b = z + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < eps:
            return mp.exp(_log_front(a, z)) * h
    raise ConvergenceError(f"continued fraction for a={a}, z={z} did not converge in {max_iter} steps")


def _lower_at(a, z, prec: int) -> mp.mpf:
    max_iter = get_config().oracle_max_iter
    with mp.workprec(prec):
        am, zm = mp.mpf(a), mp.mpf(z)
        if zm <= am + 1:
            return _lower_series(am, zm, max_iter)
        return mp.gamma(am) - _upper_fraction(am, zm, max_iter)


def _upper_at(a, z, prec: int) -> mp.mpf:
    max_iter = get_config().oracle_max_iter
    with mp.workprec(prec):
        am, zm = mp.mpf(a), mp.mpf(z)
        if zm > am + 1:
            return _upper_fraction(am, zm, max_iter)
        return mp.gamma(am) - _lower_series(am, zm, max_iter)


def _two_runs(compute: Callable[[int], mp.mpf], bits: int, extra: int) -> OracleValue:
    """Run at P = bits and at 2P; keep the 2P value and count agreeing bits."""
    guard = get_config().oracle_guard_bits
    low = compute(bits + guard + extra)
    high = compute(2 * bits + guard + extra)
    with mp.workprec(2 * bits + guard + extra):
        if not mp.isfinite(high):
            raise ConvergenceError("oracle value is not finite")
        diff = abs(high - low)
        if diff == 0:
            verified = bits
        elif high == 0:
            verified = 0
        else:
            verified = int(mp.floor(-mp.log(diff / abs(high), 2)))
    verified = max(0, min(bits, verified))
    if verified < bits:
        logger.debug(f"oracle runs agree to {verified} of {bits} bits")
    return OracleValue(value=high, bits=bits, verified_bits=verified)


def oracle_gamma_lower(a, z, bits: int = 256) -> OracleValue:
    """gamma(a, z): Kummer series for z <= a + 1, Gamma(a) - Gamma(a, z) above."""
    _check(a, z)
    return _two_runs(lambda prec: _lower_at(a, z, prec), bits, _extra_bits(a, z))


def oracle_gamma_upper(a, z, bits: int = 256) -> OracleValue:
    """Gamma(a, z): continued fraction for z > a + 1, Gamma(a) - gamma(a, z) below."""
    _check(a, z)
    return _two_runs(lambda prec: _upper_at(a, z, prec), bits, _extra_bits(a, z))


def oracle_gamma(a, bits: int = 256) -> OracleValue:
    """Complete Gamma(a)."""
    _check(a, 1)

    def compute(prec: int) -> mp.mpf:
        with mp.workprec(prec):
            return mp.gamma(mp.mpf(a))

    return _two_runs(compute, bits, _extra_bits(a, 1))


def oracle_regularized(a, z, bits: int = 256) -> Tuple[OracleValue, OracleValue]:
    """(P(a, z), Q(a, z)), each normalised by Gamma(a) at the same precision."""
    _check(a, z)
    extra = _extra_bits(a, z)

    def normalised(fn: Callable[[object, object, int], mp.mpf]) -> Callable[[int], mp.mpf]:
        def compute(prec: int) -> mp.mpf:
            value = fn(a, z, prec)
            with mp.workprec(prec):
                return value / mp.gamma(mp.mpf(a))
        return compute

    return (
        _two_runs(normalised(_lower_at), bits, extra),
        _two_runs(normalised(_upper_at), bits, extra),
    )


def _dk_integral(x, k: int, prec: int) -> mp.mpf:
    with mp.workprec(prec):
        xm = mp.mpf(x)
        kf = mp.factorial(k)

        def f(tau):
            return tau**k * mp.exp(-xm * tau - tau * tau / 2) / kf

        # log-integrand has second derivative <= -1, so past T the tail is
        # below f(peak) exp(-(T - peak)^2 / 2)
        peak = (-xm + mp.sqrt(xm * xm + 4 * k)) / 2
        T = peak + mp.sqrt(2 * (prec + 64) * mp.log(2))
        width = 1 / (abs(xm) + mp.sqrt(k) + 1)

        points = {mp.mpf(0), T}
        if peak > 0:
            points.add(peak)
        step = width
        while step < T:
            for p in (peak - step, peak + step):
                if 0 < p < T:
                    points.add(p)
            step *= 4
        value, err = mp.quad(f, sorted(points), method="tanh-sinh", error=True)
        if err > mp.ldexp(abs(value), -(prec // 2)):
            raise ConvergenceError(f"quadrature for d_{k}({x}) stalled (error {mp.nstr(err, 3)})")
        return value


def oracle_dk(x, k: int, bits: int = 160) -> OracleValue:
    """
    d_k(x) = (1/k!) int_0^inf tau^k exp(-x tau - tau^2 / 2) dtau by tanh-sinh quadrature.

    Raises:
        ConvergenceError: the quadrature error estimate misses 2^(-bits/2)
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not mp.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    extra = math.ceil(float(x) ** 2 / (2 * math.log(2))) if x < 0 else 0
    return _two_runs(lambda prec: _dk_integral(x, k, prec), bits, extra)
