"""Exceptions raised by the incomplete gamma engine."""
from typing import Optional


class IGammaError(Exception):
    """Base class for all engine errors."""


class DomainError(IGammaError, ValueError):
    """Arguments outside the supported domain (a > 0, z > 0, finite)."""


class BranchError(IGammaError, ValueError):
    """An expansion was called on the wrong side of the transition point z = a."""

    def __init__(self, message: str, use_instead: Optional[str] = None):
        if use_instead:
            message = f"{message}; use {use_instead} instead"
        super().__init__(message)
        self.use_instead = use_instead


class PrecisionCeilingError(IGammaError, ArithmeticError):
    """Cancellation needs more working precision than the configured ceiling."""

    def __init__(self, required_bits: int, max_bits: int, what: str = "assembly"):
        super().__init__(
            f"{what} needs about {required_bits} bits of working precision "
            f"but the ceiling is {max_bits} (raise IGAMMA_MAX_BITS or PrecisionCtx.max_bits)"
        )
        self.required_bits = required_bits
        self.max_bits = max_bits


class ConvergenceError(IGammaError, ArithmeticError):
    """A series, continued fraction or quadrature did not reach its tolerance."""


class CoefficientCapError(IGammaError, ValueError):
    """Requested coefficient order is above the configured cap."""

    def __init__(self, k_max: int, cap: int):
        super().__init__(f"k_max={k_max} exceeds the cap of {cap}; pass force=True to override")
        self.k_max = k_max
        self.cap = cap


class ConfigError(IGammaError, ValueError):
    """Invalid engine configuration."""


class VerificationError(IGammaError):
    """A reproduced value disagrees with its published or identity-derived reference."""
