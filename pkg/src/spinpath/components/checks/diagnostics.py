"""
Point-process diagnostics behind ``spinpath pp``.
"""

import logging
import time
from collections.abc import Sequence
from typing import Any

import numpy as np

from ...core.interfaces import CheckResult
from ..point_process import (
    CountFunctional,
    ProductFunctional,
    RngStream,
    bernoulli_poisson_gap,
    pmf_chi_square,
    poisson_sample_batch,
)

logger = logging.getLogger(__name__)

PMF_SIGNIFICANCE = 0.01
GRID_SIZES = (64, 128)
# the gap should halve when n doubles, within ±25%
HALVING_TOLERANCE = 0.125

SMOOTH_FUNCTIONALS = {
    "exp(-t)": ProductFunctional(lambda t, label: np.exp(-t)),
    "1-t^2/2": ProductFunctional(lambda t, label: 1.0 - t * t / 2),
    "1/(k+1)": CountFunctional(lambda k: 1.0 / (k + 1)),
}


def pmf_diagnostics(
    rates: Sequence[float], samples: int, seed: int
) -> tuple[list[CheckResult], dict[str, Any]]:
    """
    Chi-square of sampled Poisson counts against the pmf, one stream per rate.

    Raises:
        ValueError: If samples < 1
    """
    if samples < 1:
        raise ValueError(f"At least one sample is required, got {samples}")
    results, details = [], {}
    for index, rate in enumerate(rates):
        started = time.perf_counter()
        batch = poisson_sample_batch(np.array([rate]), RngStream(seed, index), samples)
        test = pmf_chi_square(batch.counts, rate)
        results.append(
            CheckResult(
                f"pmf rate={rate:g}",
                f"samples={samples} dof={test.degrees_of_freedom}",
                1.0 - test.p_value,
                1.0 - PMF_SIGNIFICANCE,
                seed=seed,
                passed=test.passed(PMF_SIGNIFICANCE),
                runtime=time.perf_counter() - started,
            )
        )
        details[f"{rate:g}"] = {
            "statistic": test.statistic,
            "p_value": test.p_value,
            "degrees_of_freedom": test.degrees_of_freedom,
            "observed": list(test.observed),
            "expected": list(test.expected),
        }
    return results, details


def bernoulli_convergence(rate: float) -> tuple[list[CheckResult], dict[str, Any]]:
    """Gap between the Bernoulli grid and Poisson expectations at n = 64 and 128."""
    results, details = [], {}
    for name, functional in SMOOTH_FUNCTIONALS.items():
        started = time.perf_counter()
        coarse, fine = (bernoulli_poisson_gap(functional, rate, n) for n in GRID_SIZES)
        ratio = fine / coarse if coarse > 0 else np.inf
        results.append(
            CheckResult(
                f"halving {name}",
                f"rate={rate:g} n={GRID_SIZES[0]}->{GRID_SIZES[1]}",
                abs(ratio - 0.5),
                HALVING_TOLERANCE,
                runtime=time.perf_counter() - started,
            )
        )
        details[name] = {"gaps": [coarse, fine], "ratio": ratio}
        logger.debug(f"Bernoulli gap for {name}: {coarse:.3g} -> {fine:.3g}")
    return results, details
