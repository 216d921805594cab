"""
Run settings for spinpath.

A single frozen ``Settings`` instance is shared process-wide. Environment
variables seed the defaults; the CLI and tests replace the instance with
``configure_settings`` and restore it with ``reset_settings``.
"""

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Any

logger = logging.getLogger(__name__)

WORKERS_ENV = "SPINPATH_WORKERS"
MC_BLOCK_ENV = "SPINPATH_MC_BLOCK"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return default
    if value < 1:
        logger.warning(f"Ignoring non-positive {name}={raw!r}")
        return default
    return value


def _default_workers() -> int:
    return _env_int(WORKERS_ENV, os.cpu_count() or 1)


def _default_block_size() -> int:
    return _env_int(MC_BLOCK_ENV, 4096)


@dataclass(frozen=True)
class Settings:
    """
    Numerical and runtime knobs.

    Attributes:
        max_sites: Largest region a dense LocalOperator may live on
        workers: Thread pool size for Monte Carlo blocks and path enumeration
        series_order: Default truncation order of the path series
        mc_block_size: Samples per Monte Carlo block (fixes the reduction partition)
        positivity_tolerance: Smallest eigenvalue still accepted as non-negative
        faithfulness_threshold: Lower bound on ω(Γ*Γ) before dividing by it
        confluence_tolerance: Relative gap below which energies count as equal
    """

    max_sites: int = 12
    workers: int = field(default_factory=_default_workers)
    series_order: int = 20
    mc_block_size: int = field(default_factory=_default_block_size)
    positivity_tolerance: float = 1e-10
    faithfulness_threshold: float = 1e-12
    confluence_tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.max_sites < 0:
            raise ValueError("max_sites must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.series_order < 0:
            raise ValueError("series_order must be non-negative")
        if self.mc_block_size < 1:
            raise ValueError("mc_block_size must be at least 1")


_settings: Settings | None = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def configure_settings(**overrides: Any) -> Settings:
    """
    Replace the process-wide settings, keeping fields not overridden.

    Raises:
        TypeError: If an override names an unknown field
        ValueError: If an override is out of range
    """
    global _settings
    _settings = replace(get_settings(), **overrides)
    logger.debug(f"Settings updated: {overrides}")
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
