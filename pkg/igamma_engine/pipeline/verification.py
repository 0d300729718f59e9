"""
Reproduction checks against published tables and mathematical identities.

Each check raises VerificationError with the first divergent value; the
pipeline turns that into a failed CheckResult and carries on with the rest.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import mpmath as mp
import numpy as np

from ..coeffs import (
    RatPoly,
    SignConvention,
    coeff_set_dingle,
    coeff_set_paris,
    e_coeffs,
    stirling3,
    stirling3_from_cpoly,
    stirling3_generating,
    stirling_gamma,
)
from ..evaluator import (
    ParisExpansion,
    PrecisionCtx,
    Side,
    d0,
    dk_sequence,
    gamma_dingle,
    gamma_upper_paris,
    naive_paris_coefficient,
    paris_coefficient,
    polyval_mp,
    q_diagonal,
    regularized_p,
    regularized_q,
)
from ..exceptions import IGammaError, VerificationError
from ..oracle import oracle_dk, oracle_gamma_upper, oracle_regularized
from .reference_tables import ReferenceTables, dense, published_tables

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    "s3",
    "routes",
    "table2",
    "e-coeffs",
    "stirling-gamma",
    "d4-cancellation",
    "remainder-order",
    "identity",
    "diagonal",
    "dingle-sign",
    "oracle",
)


@dataclass
class CheckResult:
    """Outcome of one named check."""
    name: str
    success: bool
    detail: str = ""
    error_message: Optional[str] = None
    seconds: float = 0.0


@dataclass
class VerificationReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return all(r.success for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.success), None)


def _expect_poly(label: str, got: RatPoly, expected: Dict[int, Fraction]) -> None:
    want = dense(expected)
    have = list(got.coeffs)
    size = max(len(want), len(have))
    want += [Fraction(0)] * (size - len(want))
    have += [Fraction(0)] * (size - len(have))
    for power, (w, h) in enumerate(zip(want, have)):
        if w != h:
            raise VerificationError(f"{label}: coefficient of x^{power} expected {w}, got {h}")


def _rel(value, reference) -> mp.mpf:
    return abs(mp.mpf(value) - reference) / abs(reference)


class VerificationPipeline:
    """
    Runs the reproduction checks.

    Checks are selected by name with `only`; `tables` swaps the published
    reference data for another copy.
    """

    def __init__(
        self,
        only: Optional[Sequence[str]] = None,
        seed: int = 0,
        tables: Optional[ReferenceTables] = None,
        samples: int = 200,
        oracle_samples: int = 100,
    ):
        selected = list(only) if only else list(CHECK_NAMES)
        unknown = [name for name in selected if name not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"Unknown check(s): {', '.join(unknown)}. Available: {', '.join(CHECK_NAMES)}")
        self.only = selected
        self.seed = seed
        self.tables = tables or published_tables()
        self.samples = samples
        self.oracle_samples = oracle_samples

    def _checks(self) -> Dict[str, Callable[[], str]]:
        return {
            "s3": self.check_s3,
            "routes": self.check_routes,
            "table2": self.check_table2,
            "e-coeffs": self.check_e_coeffs,
            "stirling-gamma": self.check_stirling_gamma,
            "d4-cancellation": self.check_d4_cancellation,
            "remainder-order": self.check_remainder_order,
            "identity": self.check_identity,
            "diagonal": self.check_diagonal,
            "dingle-sign": self.check_dingle_sign,
            "oracle": self.check_oracle,
        }

    def run(self) -> VerificationReport:
        checks = self._checks()
        report = VerificationReport()
        for name in self.only:
            start = time.perf_counter()
            try:
                detail = checks[name]()
                result = CheckResult(name=name, success=True, detail=detail)
            except (IGammaError, ArithmeticError) as e:
                logger.error(f"check {name} failed: {e}")
                result = CheckResult(name=name, success=False, error_message=str(e))
            except Exception as e:
                logger.exception(f"check {name} crashed: {e}")
                result = CheckResult(name=name, success=False, error_message=f"{type(e).__name__}: {e}")
            result.seconds = time.perf_counter() - start
            logger.info(f"check {name}: {'ok' if result.success else 'FAILED'} ({result.seconds:.1f}s)")
            report.results.append(result)
        return report

    # Exact coefficient checks

    def check_s3(self) -> str:
        rows = self.tables.s3_rows
        max_k = max(rows)
        generating = stirling3_generating(max_k)
        for k, row in sorted(rows.items()):
            for j, expected in enumerate(row, start=1):
                got = stirling3(k, j)
                if got != expected:
                    raise VerificationError(f"S3({k},{j}): expected {expected}, got {got}")
                from_series = generating[k].coeff(j) * math.factorial(k)
                if from_series != expected:
                    raise VerificationError(
                        f"S3({k},{j}) from the generating function: expected {expected}, got {from_series}"
                    )
        return f"{sum(len(r) for r in rows.values())} entries, k <= {max_k}"

    def check_routes(self) -> str:
        count = 0
        for k in range(3, 21):
            for j in range(1, k // 3 + 1):
                left, right = stirling3(k, j), stirling3_from_cpoly(k, j)
                if left != right:
                    raise VerificationError(f"S3({k},{j}): recurrence {left} != c_k polynomial {right}")
                count += 1
        return f"{count} entries agree"

    def check_table2(self) -> str:
        k_top = max(max(self.tables.a_table), max(self.tables.b_table))
        coeffs = coeff_set_paris(k_top)
        for k, expected in sorted(self.tables.a_table.items()):
            _expect_poly(f"A_{k}", coeffs.A[k], expected)
        for k, expected in sorted(self.tables.b_table.items()):
            _expect_poly(f"B_{k}", coeffs.B[k], expected)

        dingle = coeff_set_dingle(1)
        _expect_poly("Dingle A_1", dingle.A[1], self.tables.dingle_a1)
        _expect_poly("Dingle B_1", dingle.B[1], self.tables.dingle_b1)
        return f"A_k, B_k for k <= {k_top}"

    def check_e_coeffs(self) -> str:
        expected = list(self.tables.e_list)
        got = e_coeffs(len(expected) - 1)
        for k, (w, h) in enumerate(zip(expected, got)):
            if w != h:
                raise VerificationError(f"E_{k}: expected {w}, got {h}")
        return f"E_0..E_{len(expected) - 1}"

    def check_stirling_gamma(self) -> str:
        for k, expected in enumerate(self.tables.stirling_gamma):
            got = stirling_gamma(k)
            if got != expected:
                raise VerificationError(f"gamma_{k}: expected {expected}, got {got}")
        return f"gamma_0..gamma_{len(self.tables.stirling_gamma) - 1}"

    # Numerical checks

    def check_d4_cancellation(self) -> str:
        x = 10.0
        d4 = dk_sequence(x, 4)[4]
        expected = self.tables.d4_at_10
        rel = abs(float(d4) / expected - 1)
        if rel > 1e-6:
            raise VerificationError(f"d_4(10): expected {expected!r}, got {mp.nstr(d4, 17)}")

        exact = paris_coefficient(4, x, PrecisionCtx(bits=53))
        with mp.workprec(200):
            magnitude = abs(polyval_mp(coeff_set_paris(4).A[4], mp.mpf(x)) * d0(x, PrecisionCtx(bits=200)))
        if abs(float(magnitude) / self.tables.a4_d0_at_10 - 1) > 1e-4:
            raise VerificationError(
                f"A_4(10) d0(10): expected {self.tables.a4_d0_at_10!r}, got {mp.nstr(magnitude, 17)}"
            )
        naive = naive_paris_coefficient(4, x)
        naive_rel = abs(naive / float(exact) - 1)
        if naive_rel <= 1e-6:
            raise VerificationError(
                f"plain float64 C_4(10) = {naive!r} should lose more than 10 digits against "
                f"{mp.nstr(exact, 17)}, relative error {naive_rel:.3g}"
            )
        return f"d_4(10) = {mp.nstr(d4, 10)}, naive C_4 relative error {naive_rel:.2g}"

    def check_remainder_order(self) -> str:
        zs = [1e2, 1e3, 1e4, 1e5]
        ratio = 0.9
        refs = {z: oracle_gamma_upper(ratio * z, z, bits=320).value for z in zs}
        slopes = []
        for m in (2, 4, 6):
            log_err = []
            for z in zs:
                approx = gamma_upper_paris(ratio * z, z, m=m, precision=PrecisionCtx(bits=256)).value
                with mp.workprec(320):
                    log_err.append(float(mp.log(_rel(approx, refs[z]))))
            slope = float(np.polyfit(np.log(zs), log_err, 1)[0])
            bound = -(m + 1) / 2 + 0.3
            if slope > bound:
                raise VerificationError(
                    f"m={m}: relative error falls like z^{slope:.3f}, needs at most z^{bound:.3f}"
                )
            slopes.append(f"m={m}: {slope:.2f}")
        return ", ".join(slopes)

    def check_identity(self) -> str:
        rng = np.random.default_rng(self.seed)
        points = rng.uniform(5.0, 1e4, size=(self.samples, 2))
        for a, z in points:
            p = regularized_p(float(a), float(z))
            q = regularized_q(float(a), float(z))
            gap = float(p) + float(q) - 1
            if gap != 0:
                raise VerificationError(
                    f"P + Q - 1 = {gap!r} at a={a!r}, z={z!r} (P={float(p)!r}, Q={float(q)!r})"
                )

        expansion = ParisExpansion()
        ctx = PrecisionCtx(bits=53)
        for a in (50.0, 500.0, 5000.0):
            upper = expansion.expand(a, a, Side.UPPER, precision=ctx)
            lower = expansion.expand(a, a, Side.LOWER, precision=ctx)
            with mp.workprec(upper.work_bits + 16):
                lg = mp.loggamma(mp.mpf(a))
                q, p = upper.value(lg), lower.value(lg)
                gap = abs(p + q - 1)
            bound = 10 * (upper.err_estimate * float(q) + lower.err_estimate * float(p)) + 2.0**-50
            if gap > bound:
                raise VerificationError(
                    f"independent branches at z=a={a}: |P + Q - 1| = {mp.nstr(gap, 5)} exceeds {bound:.3g}"
                )
        return f"{self.samples} random points exact, branches consistent at z = a"

    def check_diagonal(self) -> str:
        e7 = abs(float(self.tables.e_list[7]))
        worst = 0.0
        for a in (10.0, 1e2, 1e3, 1e4):
            series = q_diagonal(a, m=7, precision=PrecisionCtx(bits=256)).value
            _, q_ref = oracle_regularized(a, a, bits=256)
            err = float(abs(series - q_ref.value))
            bound = 10 * e7 * a**-7 / math.sqrt(2 * math.pi * a)
            if err > bound:
                raise VerificationError(
                    f"Q({a}, {a}): diagonal series off by {err:.3g}, bound {bound:.3g} "
                    f"(series {mp.nstr(series, 30)}, reference {mp.nstr(q_ref.value, 30)})"
                )
            worst = max(worst, err / bound)
        return f"worst error at {worst:.2g} of the bound"

    def check_dingle_sign(self) -> str:
        a, z, m = 100.0, 120.0, 4
        ref = oracle_gamma_upper(a + 1, z, bits=128).value
        ctx = PrecisionCtx(bits=64)
        plain = gamma_dingle(a, z, m=m, precision=ctx, convention=SignConvention.PLAIN).value
        flipped = gamma_dingle(a, z, m=m, precision=ctx, convention=SignConvention.ALTERNATING).value
        plain_rel, flipped_rel = float(_rel(plain, ref)), float(_rel(flipped, ref))
        if plain_rel >= 1e-5:
            raise VerificationError(
                f"Gamma({a + 1}, {z}) with plain Dingle signs: relative error {plain_rel:.3g} "
                f"(got {mp.nstr(plain, 20)}, reference {mp.nstr(ref, 20)})"
            )
        if flipped_rel <= 1e-3:
            raise VerificationError(
                f"alternating Dingle signs should diverge but reach relative error {flipped_rel:.3g}"
            )
        return f"plain {plain_rel:.2g}, alternating {flipped_rel:.2g}"

    def check_oracle(self) -> str:
        rng = np.random.default_rng(self.seed + 1)
        points = rng.uniform(1.0, 1e4, size=(self.oracle_samples, 2))
        for a, z in points:
            a, z = float(a), float(z)
            p, q = oracle_regularized(a, z, bits=128)
            verified = min(p.verified_bits, q.verified_bits)
            with mp.workprec(300):
                gap = abs(p.value + q.value - 1)
            if gap > mp.ldexp(1, -verified + 2):
                raise VerificationError(f"oracle P + Q - 1 = {mp.nstr(gap, 5)} at a={a!r}, z={z!r}")

            up1 = oracle_gamma_upper(a + 1, z, bits=128)
            up0 = oracle_gamma_upper(a, z, bits=128)
            verified = min(up1.verified_bits, up0.verified_bits)
            with mp.workprec(300):
                rhs = a * up0.value + mp.exp(a * mp.log(z) - z)
                rel = _rel(up1.value, rhs)
            if rel > mp.ldexp(1, -verified + 4):
                raise VerificationError(
                    f"Gamma(a+1, z) != a Gamma(a, z) + z^a e^-z at a={a!r}, z={z!r} "
                    f"(relative gap {mp.nstr(rel, 5)})"
                )

        for k in range(13):
            got = oracle_dk(0, k, bits=160).value
            with mp.workprec(200):
                closed = mp.sqrt(mp.pi) / (mp.mpf(2) ** (mp.mpf(k + 1) / 2) * mp.gamma(mp.mpf(k) / 2 + 1))
                rel = _rel(got, closed)
            if rel > mp.mpf(10) ** -40:
                raise VerificationError(
                    f"d_{k}(0) by quadrature {mp.nstr(got, 45)} != closed form {mp.nstr(closed, 45)}"
                )
        return f"{self.oracle_samples} random points, d_k(0) for k <= 12"


def verify(
    only: Optional[Sequence[str]] = None,
    seed: int = 0,
    tables: Optional[ReferenceTables] = None,
) -> VerificationReport:
    """Convenience function to run the reproduction checks."""
    return VerificationPipeline(only=only, seed=seed, tables=tables).run()
