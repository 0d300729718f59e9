"""Accuracy maps: evaluator against the oracle over an (a, z) grid, written as CSV."""
import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Literal, Optional, Tuple

import mpmath as mp
import numpy as np
from mpmath import libmp
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..evaluator import EvalRequest, Method, PrecisionCtx, Target, eval as evaluate
from ..exceptions import IGammaError
from ..oracle import oracle_gamma_lower, oracle_gamma_upper, oracle_regularized

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("a", "z", "chi", "method", "m", "value", "oracle_value", "rel_err", "err_estimate")


class GridAxis(BaseModel):
    model_config = ConfigDict(frozen=True)

    min: float = Field(gt=0, allow_inf_nan=False)
    max: float = Field(gt=0, allow_inf_nan=False)
    count: int = Field(ge=1)
    scale: Literal["linear", "log"] = "log"

    @model_validator(mode="after")
    def _ordered(self) -> "GridAxis":
        if self.min > self.max:
            raise ValueError(f"grid min {self.min} is above max {self.max}")
        return self

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.min])
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


class AccuracyMapSpec(BaseModel):
    """Grid, method and precision of one accuracy map."""
    model_config = ConfigDict(frozen=True)

    a_grid: GridAxis
    z_grid: GridAxis
    method: Method = Method.AUTO
    m: Optional[int] = Field(default=None, ge=0)
    target: Target = Target.Q
    bits: int = Field(default=53, ge=53)
    oracle_bits: int = Field(default=256, ge=64)
    output_path: Path
    workers: int = Field(default=1, ge=1)

    def points(self) -> List[Tuple[float, float]]:
        return [(float(a), float(z)) for a in self.a_grid.values() for z in self.z_grid.values()]


@dataclass
class AccuracyRow:
    a: float
    z: float
    chi: float
    method: str
    m: Optional[int]
    value: str = "nan"
    oracle_value: str = "nan"
    rel_err: str = "nan"
    err_estimate: str = "nan"
    success: bool = True
    error_message: Optional[str] = None

    def as_csv(self) -> List[str]:
        return [
            repr(self.a), repr(self.z), repr(self.chi), self.method,
            "" if self.m is None else str(self.m),
            self.value, self.oracle_value, self.rel_err, self.err_estimate,
        ]


@dataclass
class AccuracyMapResult:
    output_path: Path
    rows: List[AccuracyRow] = field(default_factory=list)
    success: bool = True
    error_message: Optional[str] = None

    @property
    def failed_count(self) -> int:
        return sum(not r.success for r in self.rows)


def round_trip(value: mp.mpf, bits: int) -> str:
    """Decimal string that parses back to the same value at `bits` of precision."""
    if bits <= 53:
        return repr(float(value))
    return libmp.to_str(mp.mpf(value)._mpf_, libmp.repr_dps(bits))


def _oracle(target: Target, a: float, z: float, bits: int) -> mp.mpf:
    if target is Target.LOWER:
        return oracle_gamma_lower(a, z, bits).value
    if target is Target.UPPER:
        return oracle_gamma_upper(a, z, bits).value
    p, q = oracle_regularized(a, z, bits)
    return (p if target is Target.P else q).value


def evaluate_point(
    a: float,
    z: float,
    method: Method,
    m: Optional[int],
    target: Target,
    bits: int,
    oracle_bits: int,
) -> AccuracyRow:
    """One grid row; failures come back as a row with nan values."""
    row = AccuracyRow(a=a, z=z, chi=(z - a) / math.sqrt(z), method=Method(method).value, m=m)
    try:
        result = evaluate(EvalRequest(
            a=a, z=z, target=target, method=method, m=m, precision=PrecisionCtx(bits=bits),
        ))
        reference = _oracle(Target(target), a, z, oracle_bits)
        with mp.workprec(oracle_bits):
            rel = abs(result.value - reference) / abs(reference)
        row.method = result.method.value
        row.chi = result.chi_or_xi
        row.m = result.m_used
        row.value = round_trip(result.value, bits)
        row.oracle_value = round_trip(reference, bits)
        row.rel_err = repr(float(rel))
        row.err_estimate = repr(result.err_estimate)
    except (IGammaError, ValueError, ArithmeticError) as e:
        logger.warning(f"accuracy map row a={a}, z={z} failed: {e}")
        row.success = False
        row.error_message = str(e)
    return row


class AccuracyMapPipeline:
    """
    Evaluates every grid point against the oracle and writes the CSV.

    With more than one worker the points are spread over a process pool;
    every evaluation is pure, so rows are simply collected in grid order.
    """

    def __init__(self, spec: AccuracyMapSpec):
        self.spec = spec

    def _rows(self) -> List[AccuracyRow]:
        spec = self.spec
        points = spec.points()
        args = [
            (a, z, spec.method, spec.m, spec.target, spec.bits, spec.oracle_bits) for a, z in points
        ]
        logger.info(f"Accuracy map: {len(points)} points, method={spec.method.value}, workers={spec.workers}")
        if spec.workers == 1:
            return [evaluate_point(*arg) for arg in args]
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(evaluate_point, *zip(*args)))

    def write(self, rows: List[AccuracyRow]) -> None:
        path = self.spec.output_path
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow(row.as_csv())
        logger.info(f"Wrote {len(rows)} rows to {path}")

    def run(self) -> AccuracyMapResult:
        """
        Raises:
            OSError: the output path cannot be written
        """
        rows = self._rows()
        self.write(rows)
        result = AccuracyMapResult(output_path=self.spec.output_path, rows=rows)
        result.success = result.failed_count == 0
        if not result.success:
            result.error_message = f"{result.failed_count} of {len(rows)} points failed"
            logger.warning(result.error_message)
        return result


def run_accuracy_map(spec: AccuracyMapSpec) -> AccuracyMapResult:
    """Convenience function to build one accuracy map."""
    return AccuracyMapPipeline(spec).run()
