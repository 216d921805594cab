"""
Labelled point patterns on [0, 1], their intensity measures and random streams.
"""

from collections import Counter
from collections.abc import Hashable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from ...core.errors import IntensityError


@dataclass(frozen=True, init=False)
class IntensityMeasure:
    """
    Uniform-in-time intensity λ_i dt on [0, 1] for each label i.

    ``IntensityMeasure({0: 0.5, 1: 1.5})`` or ``IntensityMeasure.uniform(2.0)``.
    Labels must be mutually orderable; they are stored sorted.
    """

    rates: tuple[tuple[Hashable, float], ...]

    def __init__(self, rates: Mapping[Hashable, float]):
        if not rates:
            raise IntensityError("Intensity measure needs at least one label")
        items = []
        for label, rate in sorted(rates.items(), key=lambda item: item[0]):  # type: ignore[arg-type, return-value]
            rate = float(rate)
            if not np.isfinite(rate) or rate <= 0:
                raise IntensityError(f"Rate for label {label!r} must be positive, got {rate}")
            items.append((label, rate))
        object.__setattr__(self, "rates", tuple(items))

    @classmethod
    def uniform(cls, mass: float, label: Hashable = 0) -> "IntensityMeasure":
        return cls({label: mass})

    @property
    def total_mass(self) -> float:
        return float(sum(rate for _, rate in self.rates))

    @property
    def labels(self) -> tuple[Hashable, ...]:
        return tuple(label for label, _ in self.rates)

    def rate(self, label: Hashable) -> float:
        for known, rate in self.rates:
            if known == label:
                return rate
        return 0.0

    def rate_array(self) -> np.ndarray:
        return np.array([rate for _, rate in self.rates])

    def scaled(self, factor: float) -> "IntensityMeasure":
        return IntensityMeasure({label: rate * factor for label, rate in self.rates})


class Point(NamedTuple):
    time: float
    label: Hashable = 0


@dataclass(frozen=True, eq=False)
class PointPattern:
    """
    Finite multiset of labelled points in [0, 1].

    Equality ignores point order. The empty pattern is the null measure.
    """

    points: tuple[Point, ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple(Point(float(p[0]), p[1]) for p in self.points)
        for point in normalized:
            if not 0.0 <= point.time <= 1.0:
                raise ValueError(f"Point time {point.time} outside [0, 1]")
        object.__setattr__(self, "points", normalized)

    @classmethod
    def empty(cls) -> "PointPattern":
        return cls(())

    @classmethod
    def of(cls, *points: Any) -> "PointPattern":
        """Points given as (time, label) pairs or bare times (label 0)."""
        return cls(
            tuple(Point(*p) if isinstance(p, tuple) else Point(p, 0) for p in points)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointPattern):
            return NotImplemented
        return Counter(self.points) == Counter(other.points)

    def __hash__(self) -> int:
        return hash(frozenset(Counter(self.points).items()))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def count(self, label: Hashable | None = None) -> int:
        if label is None:
            return len(self.points)
        return sum(1 for p in self.points if p.label == label)

    def times(self) -> np.ndarray:
        return np.array([p.time for p in self.points], dtype=float)

    def labels(self) -> tuple[Hashable, ...]:
        return tuple(p.label for p in self.points)


def superpose(first: PointPattern, second: PointPattern) -> PointPattern:
    """Multiset union."""
    return PointPattern(first.points + second.points)


def time_order(pattern: PointPattern) -> tuple[Point, ...]:
    """
    Points ascending in time; ties broken by label, then by insertion order.
    """
    ordered = sorted(
        enumerate(pattern.points), key=lambda item: (item[1].time, item[1].label, item[0])
    )
    return tuple(point for _, point in ordered)


@dataclass(frozen=True)
class RngStream:
    """
    Reproducible random stream identified by (seed, index).

    Distinct indices give statistically independent streams through
    ``numpy.random.SeedSequence`` spawn keys.
    """

    seed: int
    index: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.index < 0:
            raise ValueError(f"Stream index must be non-negative, got {self.index}")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(self.index,))
        )

    def child(self, index: int) -> "RngStream":
        return RngStream(self.seed, index)
