"""
Tests for the point-process diagnostics.
"""

import pytest

from spinpath.components.checks import bernoulli_convergence, pmf_diagnostics


class TestPmfDiagnostics:
    """Test the Poisson count chi-square diagnostics."""

    def test_one_result_per_rate(self):
        results, details = pmf_diagnostics([0.5, 2.0], 2000, seed=3)
        assert [r.name for r in results] == ["pmf rate=0.5", "pmf rate=2"]
        assert set(details) == {"0.5", "2"}
        for result in results:
            assert result.seed == 3
            assert 0.0 <= result.residual <= 1.0
            assert result.tolerance == pytest.approx(0.99)

    def test_details(self):
        _, details = pmf_diagnostics([1.0], 2000, seed=0)
        entry = details["1"]
        assert sum(entry["observed"]) == 2000
        assert sum(entry["expected"]) == pytest.approx(2000)
        assert 0.0 <= entry["p_value"] <= 1.0

    def test_deterministic(self):
        first, _ = pmf_diagnostics([1.0], 1000, seed=7)
        second, _ = pmf_diagnostics([1.0], 1000, seed=7)
        assert first[0].residual == second[0].residual

    def test_requires_samples(self):
        with pytest.raises(ValueError):
            pmf_diagnostics([1.0], 0, seed=0)


class TestBernoulliConvergence:
    """Test the Bernoulli grid approximation of the Poisson process."""

    def test_gap_halves(self):
        results, details = bernoulli_convergence(1.0)
        assert len(results) == 3
        assert all(r.passed for r in results), [(r.name, r.residual) for r in results]
        for info in details.values():
            coarse, fine = info["gaps"]
            assert fine < coarse
