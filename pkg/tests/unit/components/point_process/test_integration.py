"""
Tests for the exact integration series.
"""

import math

import numpy as np
import pytest
import scipy.stats

from spinpath.components.point_process import (
    CountFunctional,
    GenericFunctional,
    IntensityMeasure,
    ProductFunctional,
    as_functional,
    bernoulli_integral,
    bernoulli_poisson_gap,
    poisson_integral_series,
)
from spinpath.components.point_process.integration import GENERIC_ORDER_CAP
from spinpath.core.errors import IntensityError, TruncationError


class TestPoissonSeries:
    """Test E f under Poisson processes."""

    def setup_method(self):
        self.measure = IntensityMeasure({0: 0.5, 1: 1.0})

    def test_count_functional(self):
        alternating = CountFunctional(lambda n: (-1) ** n)
        result = poisson_integral_series(alternating, self.measure, 40)
        assert result.value == pytest.approx(math.exp(-3.0), abs=1e-12)
        assert result.tail_bound < 1e-30
        assert result.quadrature_error == 0.0

    def test_product_functional(self):
        decay = ProductFunctional(lambda t, label: math.exp(-t))
        result = poisson_integral_series(decay, self.measure, 40)
        assert result.value == pytest.approx(math.exp(-1.5 / math.e), abs=1e-10)
        assert result.error_bound < 1e-9

    def test_label_dependent_product(self):
        # label 1 kills every pattern containing it
        g = ProductFunctional(lambda t, label: 1.0 if label == 0 else 0.0)
        result = poisson_integral_series(g, self.measure, 40)
        assert result.value == pytest.approx(math.exp(-1.0), abs=1e-10)

    def test_generic_functional(self):
        total_time = GenericFunctional(lambda p: float(p.times().sum()), bound=2.0)
        result = poisson_integral_series(total_time, IntensityMeasure.uniform(1.0), 2)
        # e^{-1} (1·1/2 + 1/2·2/2)
        assert result.value == pytest.approx(math.exp(-1.0), abs=1e-12)
        assert result.order == 2

    def test_generic_order_is_capped(self):
        parity = GenericFunctional(lambda p: (-1.0) ** len(p))
        measure = IntensityMeasure.uniform(0.5)
        result = poisson_integral_series(parity, measure, 20)
        assert result.order == GENERIC_ORDER_CAP
        tail = float(scipy.stats.poisson(0.5).sf(GENERIC_ORDER_CAP))
        assert result.tail_bound == pytest.approx(tail)
        assert result.value == pytest.approx(math.exp(-1.0), abs=1e-8)

    def test_plain_callable(self):
        empty = lambda p: 1.0 if len(p) == 0 else 0.0  # noqa: E731
        result = poisson_integral_series(empty, IntensityMeasure.uniform(0.5), 1)
        assert result.value == pytest.approx(math.exp(-0.5))

    def test_truncation_tail(self):
        result = poisson_integral_series(CountFunctional(lambda n: 1.0), self.measure, 2)
        assert abs(result.value + result.tail_bound - 1.0) < 1e-12

    def test_negative_order(self):
        with pytest.raises(TruncationError):
            poisson_integral_series(CountFunctional(lambda n: 1.0), self.measure, -1)

    def test_as_functional(self):
        with pytest.raises(TypeError):
            as_functional(3)


class TestBernoulli:
    """Test the Bernoulli grid process and its Poisson limit."""

    def test_product_is_exact(self):
        g = ProductFunctional(lambda t, label: t)
        n, rate = 8, 2.0
        p = rate / n
        expected = np.prod([1 - p + p * (j + 1) / n for j in range(n)])
        assert bernoulli_integral(g, n, rate).value == pytest.approx(expected)

    def test_count_functional(self):
        result = bernoulli_integral(CountFunctional(lambda m: 1.0), 10, 2.0)
        assert result.value == pytest.approx(1.0)
        assert result.tail_bound == 0.0

    def test_generic_empty_probability(self):
        empty = GenericFunctional(lambda p: 1.0 if len(p) == 0 else 0.0)
        assert bernoulli_integral(empty, 10, 2.0).value == pytest.approx(0.8**10)

    def test_gap_shrinks_with_grid(self):
        g = ProductFunctional(lambda t, label: math.exp(-t))
        coarse = bernoulli_poisson_gap(g, 1.0, 64)
        fine = bernoulli_poisson_gap(g, 1.0, 128)
        assert fine < 0.6 * coarse

    def test_invalid_grid(self):
        with pytest.raises(IntensityError):
            bernoulli_integral(CountFunctional(lambda m: 1.0), 2, 2.0)
