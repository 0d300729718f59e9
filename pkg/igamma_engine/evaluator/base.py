"""Request, context and result types for the evaluator."""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import mpmath as mp
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import get_config


class Target(str, Enum):
    LOWER = "lower"   # gamma(a, z)
    UPPER = "upper"   # Gamma(a, z)
    P = "P"
    Q = "Q"


class Method(str, Enum):
    AUTO = "auto"
    PARIS = "paris"
    DINGLE = "dingle"
    DIAGONAL = "diagonal"


class Branch(str, Enum):
    UPPER_FIRST = "upper_first"
    LOWER_FIRST = "lower_first"
    DIAGONAL = "diagonal"


class Side(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


class PrecisionCtx(BaseModel):
    """Working-precision contract in binary digits."""
    model_config = ConfigDict(frozen=True)

    bits: int = Field(default=53, ge=53)
    max_bits: int = Field(default_factory=lambda: get_config().max_bits)

    @model_validator(mode="after")
    def _bits_below_ceiling(self) -> "PrecisionCtx":
        if self.bits > self.max_bits:
            raise ValueError(f"bits={self.bits} exceeds max_bits={self.max_bits}")
        return self

    def with_bits(self, bits: int) -> "PrecisionCtx":
        return PrecisionCtx(bits=bits, max_bits=self.max_bits)


def transition_chi(a: float, z: float) -> float:
    """chi = (z - a) / sqrt(z)."""
    return (z - a) / math.sqrt(z)


class EvalRequest(BaseModel):
    """
    One evaluation of gamma, Gamma, P or Q.

    m=None selects the adaptive truncation order. An explicit diagonal
    method is only accepted close to z = a (|chi| within the configured
    diagonal_chi).
    """
    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0, allow_inf_nan=False)
    z: float = Field(gt=0, allow_inf_nan=False)
    target: Target = Target.Q
    method: Method = Method.AUTO
    m: Optional[int] = Field(default=None, ge=0)
    precision: PrecisionCtx = Field(default_factory=PrecisionCtx)

    @model_validator(mode="after")
    def _method_fits_point(self) -> "EvalRequest":
        if self.method is Method.DIAGONAL:
            chi = transition_chi(self.a, self.z)
            limit = get_config().diagonal_chi
            if abs(chi) > limit:
                raise ValueError(
                    f"method=diagonal needs |chi| <= {limit}, got chi={chi:.3g}; "
                    f"use method=paris or auto"
                )
        if self.method is Method.DINGLE and self.a <= 1:
            raise ValueError("method=dingle needs a > 1 (it expands Gamma(a, z) as Gamma((a-1)+1, z))")
        return self

    @property
    def chi(self) -> float:
        return transition_chi(self.a, self.z)


@dataclass
class EvalResult:
    """Value of one incomplete gamma quantity with provenance."""
    value: mp.mpf
    target: Target
    branch: Branch
    chi_or_xi: float
    m_used: int
    precision_bits_used: int
    err_estimate: float             # |first omitted term| / |value|, heuristic
    method: Method
    bits: int = 53

    def __float__(self) -> float:
        return float(self.value)
