"""
Acceptance properties at desk scale.

Every property is checked against the exact matrix oracle or a closed form
on small seeded instances.
"""

import numpy as np

from spinpath.components.checks import (
    LemmaSuite,
    SuiteContext,
    bernoulli_convergence,
    pmf_diagnostics,
)
from spinpath.components.gibbs import (
    GibbsParameters,
    consistency_check,
    specification_check,
)
from spinpath.components.groupoid import (
    LocalOperator,
    Region,
    SpinConfiguration,
    convolve,
    random_operator,
)
from spinpath.components.interaction import (
    hamiltonian,
    ising_chain,
    random_interaction,
    split,
    transverse_field_ising,
)
from spinpath.components.kms import (
    DensityState,
    DynamicsSpec,
    classical_dlr_kernel,
    conditional_kernel,
    dyson_cocycle,
    exact_cocycle,
    is_classical_state,
    kms_check,
    perturbed_state,
)
from spinpath.components.paths import exp_mc, exp_oracle, exp_series
from spinpath.components.point_process import RngStream

CHAIN = Region.box(0, 2)


class TestAlgebra:
    """Convolution and adjoint against the matrix picture on two sites."""

    def test_isomorphism(self):
        pair = Region.box(0, 1)
        rng = np.random.default_rng(0)
        for _ in range(5):
            f, g = random_operator(pair, rng), random_operator(pair, rng)
            product = convolve(f, g).to_matrix()
            assert np.abs(product - f.to_matrix() @ g.to_matrix()).max() <= 1e-12
            assert np.abs(f.adjoint().to_matrix() - f.to_matrix().conj().T).max() <= 1e-12


class TestPathRepresentation:
    """The truncated path series and the Monte Carlo estimator against the oracle."""

    def test_series_matches_oracle(self):
        for index in range(20):
            rng = RngStream(2024, index).generator()
            sites = Region.box(0, 1 + index % 2)
            phi = random_interaction(sites, rng)
            bundle = split(phi, sites, sites)
            for beta in (0.2, 0.5, 1.0):
                result = exp_series(bundle, beta, 20)
                error = (result.value - exp_oracle(bundle, beta)).max_abs()
                assert error <= max(1e-8, result.tail_bound), (index, beta, error)

    def test_monte_carlo_within_four_sigma(self):
        site = Region.of(0)
        bundle = split(transverse_field_ising(site, transverse=1.0), site, site)
        oracle = exp_oracle(bundle, 1.0).coefficients
        passing = 0
        for seed in range(20):
            result = exp_mc(bundle, 1.0, 100_000, seed)
            allowed = 4 * result.standard_error + 1e-12
            passing += bool(np.all(np.abs(result.value.coefficients - oracle) <= allowed))
        assert passing >= 17


class TestBoundaryIdentities:
    """Splitting, gluing, adjoint and consistency on random instances."""

    def test_lemma_suite_on_random_models(self):
        for index in range(3):
            phi = random_interaction(CHAIN, RngStream(7, index).generator())
            context = SuiteContext(phi, 0.7, Region.of(1), CHAIN, seed=index, trials=4)
            failures = [(r.name, r.residual) for r in LemmaSuite().run(context) if not r.passed]
            assert not failures, (index, failures)

    def test_consistency(self):
        inside = Region.of(1, 2)
        for index in range(20):
            rng = RngStream(11, index).generator()
            phi = random_interaction(CHAIN, rng)
            params = GibbsParameters(0.9, phi, inside, CHAIN)
            inner = Region.of(1) if index % 2 else Region.of(2)
            config = SpinConfiguration.from_index(params.outside, int(rng.integers(2)))
            f = random_operator(CHAIN, rng)
            assert consistency_check(params, inner, f, config) <= 1e-8

    def test_same_region_is_exact(self):
        params = GibbsParameters(1.0, transverse_field_ising(CHAIN), Region.of(1), CHAIN)
        config = SpinConfiguration.uniform(params.outside, 0)
        f = random_operator(CHAIN, np.random.default_rng(3))
        assert consistency_check(params, Region.of(1), f, config) <= 1e-12


class TestSpecification:
    """The specification axioms on random quantum and classical instances."""

    def test_axioms(self):
        for index in range(4):
            rng = RngStream(13, index).generator()
            phi = random_interaction(CHAIN, rng, classical=index % 2 == 1)
            params = GibbsParameters(0.8, phi, Region.of(1), CHAIN)
            results = specification_check(params, rng, trials=2)
            failures = [(r.name, r.residual) for r in results if not r.passed]
            assert not failures, (index, failures)


class TestKms:
    """KMS condition, perturbed states and cocycles."""

    def setup_method(self):
        self.pair = Region.box(0, 1)
        self.generator = hamiltonian(transverse_field_ising(self.pair, field=0.4), self.pair)
        self.spec = DynamicsSpec(self.generator, 1.0)
        self.state = DensityState.gibbs(self.generator, 1.0)

    def test_gibbs_state_is_kms(self):
        rng = np.random.default_rng(8)
        worst = max(
            kms_check(self.state, self.spec, random_operator(self.pair, rng), random_operator(self.pair, rng))
            for _ in range(20)
        )
        assert worst <= 1e-10

    def test_mismatched_beta_witness(self):
        rng = np.random.default_rng(8)
        shifted = DynamicsSpec(self.generator, 1.5)
        worst = max(
            kms_check(self.state, shifted, random_operator(self.pair, rng), random_operator(self.pair, rng))
            for _ in range(5)
        )
        assert worst > 1e-3

    def test_perturbed_state_and_cocycle(self):
        p = random_operator(self.pair, np.random.default_rng(9), hermitian=True)
        p = p / p.norm()
        perturbed = perturbed_state(self.state, self.spec, p)
        target = DensityState.gibbs(self.generator + p, 1.0)
        rng = np.random.default_rng(10)
        for _ in range(5):
            a = random_operator(self.pair, rng)
            assert abs(perturbed(a) - target(a)) <= 1e-9
        for t in (2.0, -1.5, 1.0j):
            result = dyson_cocycle(self.spec, p, t, 25)
            error = (result.value - exact_cocycle(self.spec, p, t)).max_abs()
            assert error <= result.tail_bound + 1e-12


class TestClassicalReduction:
    """Classical Ising on three sites."""

    def test_classical_state_and_kernels(self):
        phi = ising_chain(CHAIN, field=0.3)
        state = DensityState.gibbs(hamiltonian(phi, CHAIN), 0.9)
        assert is_classical_state(state).residual <= 1e-12
        for boundary in SpinConfiguration.all(Region.of(0, 2)):
            kernel = classical_dlr_kernel(phi, Region.of(1), 0.9, boundary)
            conditional = conditional_kernel(state.density, Region.of(1), boundary)
            assert np.abs(kernel - conditional).max() <= 1e-12
        identity = LocalOperator.identity(CHAIN)
        assert abs(state(identity) - 1) < 1e-12


class TestPointProcess:
    """Poisson counts and the Bernoulli grid limit."""

    def test_pmf_chi_square(self):
        """
        Each seed runs the count test at significance 0.01 on 10^5 samples.

        Five independent seeds per rate must give at least four passes, since a
        correct sampler still fails about one seed in a hundred.
        """
        for rate in (0.5, 1.0, 2.0):
            passed = sum(
                pmf_diagnostics([rate], 100_000, seed)[0][0].passed for seed in range(5)
            )
            assert passed >= 4, rate

    def test_bernoulli_gap_halves(self):
        results, _ = bernoulli_convergence(1.0)
        assert all(r.passed for r in results)
