"""Shared fixtures: every test gets a clean IGAMMA_* environment and a fresh config."""
import os
from typing import Callable

import mpmath as mp
import pytest

from igamma_engine.config import ENV_PREFIX, reset_config


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    # a private copy so load_dotenv and setenv cannot leak between tests
    env = {k: v for k, v in os.environ.items() if not k.startswith(ENV_PREFIX)}
    monkeypatch.setattr(os, "environ", env)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def engine_env(monkeypatch) -> Callable[..., None]:
    """Set IGAMMA_* overrides, e.g. engine_env(kmax_cap=3), and reload the config."""

    def apply(**overrides):
        for name, value in overrides.items():
            monkeypatch.setenv(ENV_PREFIX + name.upper(), str(value))
        reset_config()

    return apply


def rel_err(value, reference) -> float:
    with mp.workprec(256):
        return float(abs(mp.mpf(value) - mp.mpf(reference)) / abs(mp.mpf(reference)))
