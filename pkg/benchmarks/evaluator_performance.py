"""
Performance benchmarks for the e^{-β(H+W)} evaluators.

Times the matrix oracle, the truncated path series and the Monte Carlo
estimator on small chains, checks the runtime budgets of the acceptance
properties and measures how much the density cache saves on repeated
exponentials.
"""

import json
import statistics
import time
from pathlib import Path
from typing import Any

import numpy as np

from spinpath.components.groupoid import Region, convolve, random_operator
from spinpath.components.interaction import random_interaction, split, transverse_field_ising
from spinpath.components.paths import (
    exp_mc,
    exp_oracle,
    exp_series,
    exponentiate,
    get_density_cache,
)
from spinpath.components.point_process import RngStream

# seconds
ALGEBRA_BUDGET = 1.0
SERIES_BUDGET = 30.0
MC_BUDGET = 30.0


class EvaluatorBenchmark:
    """Benchmark suite for the Gibbs evaluators."""

    def __init__(self, seed: int = 0) -> None:
        self.seed = seed
        self.results: dict[str, Any] = {}

    def _timed(self, compute: Any, iterations: int) -> list[float]:
        times = []
        for _ in range(iterations):
            start_time = time.perf_counter()
            compute()
            times.append((time.perf_counter() - start_time) * 1000)
        return times

    def benchmark_algebra(self, trials: int = 50) -> dict[str, Any]:
        """Convolution on two sites against the one-second budget."""
        print("Benchmarking two-site convolution...")
        rng = np.random.default_rng(self.seed)
        pair = Region.box(0, 1)
        operators = [(random_operator(pair, rng), random_operator(pair, rng)) for _ in range(trials)]

        start_time = time.perf_counter()
        for f, g in operators:
            convolve(f, g)
        elapsed = time.perf_counter() - start_time

        results = {"trials": trials, "total_s": elapsed, "within_budget": elapsed < ALGEBRA_BUDGET}
        print(f"  Total: {elapsed * 1000:.2f} ms for {trials} products")
        print()
        return results

    def benchmark_evaluators(self, iterations: int = 5) -> dict[str, Any]:
        """Oracle, series and Monte Carlo on transverse-field chains of 1 to 3 sites."""
        results: dict[str, Any] = {}
        for size in (1, 2, 3):
            sites = Region.box(0, size - 1)
            bundle = split(transverse_field_ising(sites, transverse=0.7), sites, sites)
            print(f"Benchmarking evaluators on {size} site(s)...")

            entry = {}
            for name, compute in (
                ("oracle", lambda: exp_oracle(bundle, 1.0)),
                ("series", lambda: exp_series(bundle, 1.0, 20)),
                ("mc", lambda: exp_mc(bundle, 1.0, 10_000, self.seed)),
            ):
                if name == "oracle":
                    get_density_cache().clear()
                times = self._timed(compute, iterations)
                entry[name] = {
                    "mean_ms": statistics.mean(times),
                    "median_ms": statistics.median(times),
                    "stdev_ms": statistics.stdev(times) if len(times) > 1 else 0,
                    "max_ms": max(times),
                }
                print(f"  {name:<7} mean {entry[name]['mean_ms']:.2f} ms")
            results[str(size)] = entry
            print()
        return results

    def benchmark_series_acceptance(self) -> dict[str, Any]:
        """Twenty random models at three temperatures against the series budget."""
        print("Benchmarking series acceptance workload...")
        start_time = time.perf_counter()
        worst = 0.0
        for index in range(20):
            sites = Region.box(0, 1 + index % 2)
            phi = random_interaction(sites, RngStream(self.seed, index).generator())
            bundle = split(phi, sites, sites)
            for beta in (0.2, 0.5, 1.0):
                error = (exp_series(bundle, beta, 20).value - exp_oracle(bundle, beta)).max_abs()
                worst = max(worst, error)
        elapsed = time.perf_counter() - start_time

        results = {"total_s": elapsed, "worst_error": worst, "within_budget": elapsed < SERIES_BUDGET}
        print(f"  Total: {elapsed:.2f} s, worst error {worst:.3g}")
        print()
        return results

    def benchmark_mc_acceptance(self) -> dict[str, Any]:
        """One single-site run with 10^5 samples against the Monte Carlo budget."""
        print("Benchmarking Monte Carlo acceptance workload...")
        site = Region.of(0)
        bundle = split(transverse_field_ising(site, transverse=1.0), site, site)
        start_time = time.perf_counter()
        exp_mc(bundle, 1.0, 100_000, self.seed)
        elapsed = time.perf_counter() - start_time

        results = {"total_s": elapsed, "within_budget": elapsed < MC_BUDGET}
        print(f"  Total: {elapsed:.2f} s")
        print()
        return results

    def benchmark_cache(self, iterations: int = 100) -> dict[str, Any]:
        """Repeated exponentials of one Hamiltonian, first call against cached calls."""
        print("Benchmarking density cache...")
        sites = Region.box(0, 5)
        bundle = split(transverse_field_ising(sites), sites, sites)
        cache = get_density_cache()
        cache.clear()

        start_time = time.perf_counter()
        exponentiate(bundle.total, 1.0)
        first_ms = (time.perf_counter() - start_time) * 1000
        cached = self._timed(lambda: exponentiate(bundle.total, 1.0), iterations)

        results = {
            "first_ms": first_ms,
            "cache_mean_ms": statistics.mean(cached),
            "speedup_factor": first_ms / statistics.mean(cached),
            "stats": cache.get_stats(),
        }
        print(f"  First call: {results['first_ms']:.2f} ms")
        print(f"  Cache mean: {results['cache_mean_ms']:.4f} ms")
        print(f"  Speedup:    {results['speedup_factor']:.1f}x")
        print()
        return results

    def run_full_benchmark(self) -> dict[str, Any]:
        print("=" * 60)
        print("SPINPATH EVALUATOR BENCHMARK")
        print("=" * 60)
        print()

        self.results = {
            "timestamp": time.time(),
            "algebra": self.benchmark_algebra(),
            "evaluators": self.benchmark_evaluators(),
            "series_acceptance": self.benchmark_series_acceptance(),
            "mc_acceptance": self.benchmark_mc_acceptance(),
            "cache": self.benchmark_cache(),
        }

        print("=" * 60)
        print("SUMMARY")
        print("=" * 60)
        for key in ("algebra", "series_acceptance", "mc_acceptance"):
            print(f"{key:<18} {'✓' if self.results[key]['within_budget'] else '✗'}")
        return self.results

    def save_results(self, filename: str = "benchmark_results.json") -> None:
        output_path = Path("benchmarks") / filename
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            json.dump(self.results, f, indent=2, default=str)
        print(f"Results saved to: {output_path}")


def main() -> None:
    benchmark = EvaluatorBenchmark()
    benchmark.run_full_benchmark()
    benchmark.save_results()


if __name__ == "__main__":
    main()
