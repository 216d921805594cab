"""
Poisson and Bernoulli samplers and a goodness-of-fit test for counts.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.stats

from ...core.errors import IntensityError
from .patterns import IntensityMeasure, Point, PointPattern, RngStream

logger = logging.getLogger(__name__)


def _generator(rng: RngStream | np.random.Generator) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngStream) else rng


def poisson_sample(
    measure: IntensityMeasure, rng: RngStream | np.random.Generator
) -> PointPattern:
    """
    Draw a Poisson count per label, then that many iid uniform times.
    """
    gen = _generator(rng)
    points: list[Point] = []
    for label, rate in measure.rates:
        count = int(gen.poisson(rate))
        points.extend(Point(float(t), label) for t in gen.random(count))
    return PointPattern(tuple(points))


@dataclass(frozen=True)
class PatternBatch:
    """
    Time-ordered labelled patterns packed into padded arrays.

    Attributes:
        labels: (size, K) label positions, −1 beyond each pattern's count
        times: (size, K) ascending times, 1.0 in padded slots
        counts: (size,) number of points per pattern
    """

    labels: np.ndarray
    times: np.ndarray
    counts: np.ndarray

    @property
    def size(self) -> int:
        return int(self.counts.shape[0])

    def pattern(self, index: int, label_values: tuple = ()) -> PointPattern:
        n = int(self.counts[index])
        return PointPattern(
            tuple(
                Point(
                    float(self.times[index, k]),
                    label_values[self.labels[index, k]] if label_values else int(self.labels[index, k]),
                )
                for k in range(n)
            )
        )


def poisson_sample_batch(
    rates: np.ndarray, rng: RngStream | np.random.Generator, size: int
) -> PatternBatch:
    """
    ``size`` independent labelled Poisson patterns, label ``i`` with rate ``rates[i]``.
    """
    gen = _generator(rng)
    rates = np.asarray(rates, dtype=float)
    counts = gen.poisson(rates, size=(size, rates.shape[0]))
    per_sample = counts.sum(axis=1)
    total = int(per_sample.sum())

    sample_ids = np.repeat(np.arange(size), per_sample)
    labels = np.repeat(np.tile(np.arange(rates.shape[0]), size), counts.ravel())
    times = gen.random(total)

    order = np.lexsort((times, sample_ids))
    sample_ids, labels, times = sample_ids[order], labels[order], times[order]
    starts = np.cumsum(per_sample) - per_sample
    ranks = np.arange(total) - starts[sample_ids]

    width = int(per_sample.max(initial=0))
    padded_labels = np.full((size, width), -1, dtype=np.int64)
    padded_times = np.ones((size, width))
    padded_labels[sample_ids, ranks] = labels
    padded_times[sample_ids, ranks] = times
    return PatternBatch(padded_labels, padded_times, per_sample)


def bernoulli_sample(
    n: int, rate: float, rng: RngStream | np.random.Generator, label: int = 0
) -> PointPattern:
    """
    Include each grid time j/n, j = 1..n, independently with probability λ/n.

    Raises:
        IntensityError: If n ≤ λ or λ < 0
    """
    if rate < 0:
        raise IntensityError(f"Rate must be non-negative, got {rate}")
    if n <= rate:
        raise IntensityError(f"Grid size n = {n} must exceed the rate {rate}")
    gen = _generator(rng)
    chosen = np.flatnonzero(gen.random(n) < rate / n)
    return PointPattern(tuple(Point((j + 1) / n, label) for j in chosen))


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    p_value: float
    degrees_of_freedom: int
    observed: tuple[int, ...]
    expected: tuple[float, ...]

    def passed(self, significance: float = 0.01) -> bool:
        return self.p_value >= significance


def pmf_chi_square(counts: np.ndarray, rate: float) -> ChiSquareResult:
    """
    Chi-square test of observed counts against Poisson(rate).

    Bins are single counts while their expected frequency stays at least 5;
    the remaining tail forms one last bin.
    """
    counts = np.asarray(counts, dtype=np.int64)
    total = counts.shape[0]
    if total == 0:
        raise IntensityError("Chi-square test needs at least one sample")
    distribution = scipy.stats.poisson(rate)

    last = 0
    while total * distribution.pmf(last + 1) >= 5 and total * distribution.sf(last + 1) >= 5:
        last += 1

    expected = [total * distribution.pmf(k) for k in range(last + 1)]
    expected.append(total * distribution.sf(last))
    observed = [int(np.count_nonzero(counts == k)) for k in range(last + 1)]
    observed.append(int(np.count_nonzero(counts > last)))

    if expected[-1] < 5 and len(expected) > 2:
        expected[-2] += expected.pop()
        observed[-2] += observed.pop()

    statistic, p_value = scipy.stats.chisquare(observed, np.array(expected) * total / sum(expected))
    logger.debug(f"Chi-square at rate {rate}: statistic {statistic:.4g}, p = {p_value:.4g}")
    return ChiSquareResult(
        float(statistic), float(p_value), len(observed) - 1, tuple(observed), tuple(expected)
    )
