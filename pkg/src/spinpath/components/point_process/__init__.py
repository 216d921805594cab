"""
Labelled Poisson and Bernoulli point processes on [0, 1].
"""

from .integration import (
    CountFunctional,
    GenericFunctional,
    IntegrationResult,
    PatternFunctional,
    ProductFunctional,
    as_functional,
    bernoulli_integral,
    bernoulli_poisson_gap,
    poisson_integral_series,
)
from .patterns import IntensityMeasure, Point, PointPattern, RngStream, superpose, time_order
from .sampling import (
    ChiSquareResult,
    PatternBatch,
    bernoulli_sample,
    pmf_chi_square,
    poisson_sample,
    poisson_sample_batch,
)

__all__ = [
    "ChiSquareResult",
    "CountFunctional",
    "GenericFunctional",
    "IntegrationResult",
    "IntensityMeasure",
    "PatternBatch",
    "PatternFunctional",
    "Point",
    "PointPattern",
    "ProductFunctional",
    "RngStream",
    "as_functional",
    "bernoulli_integral",
    "bernoulli_poisson_gap",
    "bernoulli_sample",
    "pmf_chi_square",
    "poisson_integral_series",
    "poisson_sample",
    "poisson_sample_batch",
    "superpose",
    "time_order",
]
