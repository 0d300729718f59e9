"""Engine configuration loaded from the environment."""
import logging
import os
from dataclasses import dataclass, fields
from typing import Optional

from dotenv import load_dotenv

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "IGAMMA_"


@dataclass(frozen=True)
class EngineConfig:
    """Tunable limits for coefficient generation, evaluation and the oracle."""
    max_bits: int = 1024             # escalation ceiling
    kmax_cap: int = 30               # coefficient order cap without force
    chi_star: float = 4.0            # forward recurrence below, escalated assembly above
    guard_bits: int = 10
    diagonal_chi: float = 1e-3       # explicit method=diagonal
    auto_diagonal_chi: float = 1e-12 # auto dispatch
    paris_m_cap: int = 10
    diagonal_m_cap: int = 7
    oracle_guard_bits: int = 32
    oracle_max_iter: int = 200_000

    def __post_init__(self):
        if self.max_bits < 53:
            raise ConfigError(f"max_bits must be at least 53, got {self.max_bits}")
        if self.kmax_cap < 0:
            raise ConfigError(f"kmax_cap must be nonnegative, got {self.kmax_cap}")
        if self.chi_star <= 0:
            raise ConfigError(f"chi_star must be positive, got {self.chi_star}")
        if not 0 <= self.auto_diagonal_chi <= self.diagonal_chi:
            raise ConfigError("need 0 <= auto_diagonal_chi <= diagonal_chi")
        for name in ("guard_bits", "paris_m_cap", "diagonal_m_cap", "oracle_guard_bits"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.oracle_max_iter < 1:
            raise ConfigError("oracle_max_iter must be positive")


def load_config(env_file: Optional[str] = None) -> EngineConfig:
    """
    Build an EngineConfig from IGAMMA_* environment variables.

    Args:
        env_file: Optional .env path; the default search of python-dotenv is used otherwise

    Returns:
        EngineConfig with defaults for unset variables
    """
    load_dotenv(env_file)

    values = {}
    for field in fields(EngineConfig):
        raw = os.environ.get(ENV_PREFIX + field.name.upper())
        if raw is None or raw.strip() == "":
            continue
        try:
            values[field.name] = field.type(raw)
        except ValueError as e:
            raise ConfigError(f"{ENV_PREFIX}{field.name.upper()}={raw!r}: {e}") from e

    config = EngineConfig(**values)
    if values:
        logger.debug(f"Loaded config overrides: {values}")
    return config


_config: Optional[EngineConfig] = None


def get_config() -> EngineConfig:
    """Lazily load the process-wide configuration."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    """Forget the cached configuration so the next get_config() re-reads the environment."""
    global _config
    _config = None
