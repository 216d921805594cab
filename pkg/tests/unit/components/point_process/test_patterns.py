"""
Tests for intensity measures, point patterns and random streams.
"""

import numpy as np
import pytest

from spinpath.components.point_process import (
    IntensityMeasure,
    Point,
    PointPattern,
    RngStream,
    superpose,
    time_order,
)
from spinpath.core.errors import IntensityError


class TestIntensityMeasure:
    """Test intensity measures."""

    def test_labels_sorted_and_mass(self):
        measure = IntensityMeasure({2: 0.5, 0: 1.5})
        assert measure.labels == (0, 2)
        assert measure.total_mass == pytest.approx(2.0)
        assert measure.rate(2) == 0.5
        assert measure.rate(7) == 0.0
        assert np.allclose(measure.rate_array(), [1.5, 0.5])

    def test_scaled(self):
        assert IntensityMeasure.uniform(2.0).scaled(0.25).total_mass == pytest.approx(0.5)

    @pytest.mark.parametrize("rates", [{}, {0: 0.0}, {0: -1.0}, {0: float("inf")}])
    def test_invalid(self, rates):
        with pytest.raises(IntensityError):
            IntensityMeasure(rates)


class TestPointPattern:
    """Test pattern multisets."""

    def test_equality_ignores_order(self):
        first = PointPattern.of((0.2, 1), (0.7, 0))
        second = PointPattern.of((0.7, 0), (0.2, 1))
        assert first == second
        assert hash(first) == hash(second)
        assert first != PointPattern.of((0.2, 1))

    def test_bare_times_use_label_zero(self):
        pattern = PointPattern.of(0.1, 0.4)
        assert pattern.labels() == (0, 0)
        assert np.allclose(pattern.times(), [0.1, 0.4])

    def test_times_must_lie_in_unit_interval(self):
        with pytest.raises(ValueError):
            PointPattern.of(1.5)

    def test_count_and_superpose(self):
        pattern = superpose(PointPattern.of((0.1, 0)), PointPattern.of((0.3, 1), (0.5, 1)))
        assert len(pattern) == 3
        assert pattern.count(1) == 2
        assert pattern.count() == 3
        assert len(PointPattern.empty()) == 0

    def test_time_order_breaks_ties_by_label(self):
        pattern = PointPattern.of((0.5, 2), (0.1, 0), (0.5, 1))
        assert time_order(pattern) == (Point(0.1, 0), Point(0.5, 1), Point(0.5, 2))


class TestRngStream:
    """Test reproducible streams."""

    def test_same_stream_same_draws(self):
        a = RngStream(42, 3).generator().random(5)
        b = RngStream(42, 3).generator().random(5)
        assert np.array_equal(a, b)

    def test_indices_give_different_streams(self):
        a = RngStream(42, 0).generator().random(5)
        b = RngStream(42).child(1).generator().random(5)
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("seed,index", [(-1, 0), (2**64, 0), (0, -1)])
    def test_invalid(self, seed, index):
        with pytest.raises(ValueError):
            RngStream(seed, index)
