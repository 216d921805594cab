"""
Check suites run by ``spinpath check``.

Each suite draws its random instances from streams keyed by (seed, check
index), so adding a check or changing the worker count never moves the
instances of another check.
"""

import itertools
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ...core.config import get_settings
from ...core.events.bus import EventBus
from ...core.interfaces import CheckResult, ICheckSuite
from ..gibbs import (
    GibbsParameters,
    boundary_functional,
    dlr_check,
    positivity_survey,
    specification_check,
)
from ..groupoid import (
    FlipSet,
    LocalOperator,
    Region,
    SpinConfiguration,
    convolve,
    pauli_basis,
    random_operator,
)
from ..interaction import Interaction, hamiltonian, split
from ..kms import (
    DensityState,
    DynamicsSpec,
    classical_dlr_kernel,
    conditional_kernel,
    dyson_cocycle,
    exact_cocycle,
    gibbs_araki_check,
    is_classical_state,
    kms_check,
    perturbed_state,
)
from ..paths import (
    JumpPath,
    boundary_density,
    boundary_expansion,
    boundary_weight,
    concatenate,
    exp_oracle,
    exp_series,
    reverse,
)
from ..point_process import RngStream
from .registry import CheckRegistry

GAUSS_NODES = 24
SIMPLEX_NODES = 10
DYSON_ORDER = 25


@dataclass
class SuiteContext:
    """
    Model and run parameters handed to every suite.
    """

    interaction: Interaction
    beta: float
    region: Region
    ambient: Region
    seed: int = 0
    trials: int = 3
    evaluator: str = "oracle"
    order: int | None = None
    inject_corruption: bool = False
    event_bus: EventBus | None = None

    def parameters(self) -> GibbsParameters:
        return GibbsParameters(
            self.beta, self.interaction, self.region, self.ambient, self.evaluator, self.order
        )

    def rng(self, index: int) -> np.random.Generator:
        return RngStream(self.seed, index).generator()

    @property
    def outside(self) -> Region:
        return self.ambient - self.region

    def describe(self) -> str:
        return f"Λ={self.region} U={self.ambient} β={self.beta:g}"


def corrupt_density(density: LocalOperator) -> LocalOperator:
    """Move weight between the first two diagonal entries so that one turns negative."""
    matrix = density.to_matrix().copy()
    if matrix.shape[0] < 2:
        return density * -1.0
    shift = 2 * abs(density.trace())
    matrix[0, 0] += shift
    matrix[1, 1] -= shift
    return LocalOperator.from_matrix(density.region, matrix)


def _unit(operator: LocalOperator) -> LocalOperator:
    norm = operator.norm()
    return operator / norm if norm > 0 else operator


class BaseSuite(ICheckSuite):
    """
    Shared timing and result construction.
    """

    def _timed(
        self,
        context: SuiteContext,
        name: str,
        compute: Callable[[], float],
        tolerance: float,
        instance: str | None = None,
        invert: bool = False,
    ) -> CheckResult:
        started = time.perf_counter()
        residual = float(compute())
        passed = residual > tolerance if invert else residual <= tolerance
        return CheckResult(
            name,
            instance or context.describe(),
            residual,
            tolerance,
            seed=context.seed,
            passed=passed,
            runtime=time.perf_counter() - started,
        )


class KmsSuite(BaseSuite):
    """KMS condition, perturbed states, cocycles and the Gibbs-Araki condition."""

    def get_name(self) -> str:
        return "kms"

    def get_description(self) -> str:
        return "KMS condition and perturbation theory of the finite-volume Gibbs state"

    def run(self, context: SuiteContext) -> list[CheckResult]:
        params = context.parameters()
        generator = hamiltonian(context.interaction, context.ambient)
        spec = DynamicsSpec(generator, context.beta)
        state = DensityState.gibbs(generator, context.beta)

        def pairs(index: int, region: Region) -> list[tuple[LocalOperator, LocalOperator]]:
            rng = context.rng(index)
            return [
                (_unit(random_operator(region, rng)), _unit(random_operator(region, rng)))
                for _ in range(context.trials)
            ]

        def kms() -> float:
            return max(kms_check(state, spec, a, b) for a, b in pairs(0, context.ambient))

        def mismatch() -> float:
            shifted = DynamicsSpec(generator, 1.5 * context.beta)
            return max(kms_check(state, shifted, a, b) for a, b in pairs(1, context.ambient))

        perturbation = _unit(random_operator(context.ambient, context.rng(2), hermitian=True))

        def perturbation_identity() -> float:
            perturbed = perturbed_state(state, spec, perturbation)
            target = DensityState.gibbs(generator + perturbation, context.beta)
            return max(abs(perturbed(a) - target(a)) for _, a in pauli_basis(context.ambient))

        def cocycle(t: complex) -> Callable[[], float]:
            def compute() -> float:
                result = dyson_cocycle(spec, perturbation, t, DYSON_ORDER)
                exact = exact_cocycle(spec, perturbation, t)
                return max(0.0, (result.value - exact).max_abs() - result.tail_bound)

            return compute

        def gibbs_araki() -> float:
            return gibbs_araki_check(state, params, context.rng(3)).factorization_residual

        def dlr_kms() -> float:
            rng = context.rng(4)
            dlr = max(
                dlr_check(state.density, params, _unit(random_operator(context.ambient, rng)))
                for _ in range(context.trials)
            )
            if dlr > 1e-8:
                return np.inf
            return max(kms_check(state, spec, a, b) for a, b in pairs(5, context.region))

        return [
            self._timed(context, "kms", kms, 1e-10),
            self._timed(context, "kms-mismatch", mismatch, 1e-3, invert=True),
            self._timed(context, "perturbation", perturbation_identity, 1e-9),
            self._timed(context, "dyson-cocycle", cocycle(2.0), 1e-10),
            self._timed(context, "dyson-cocycle-imaginary", cocycle(0.5j * context.beta), 1e-10),
            self._timed(context, "gibbs-araki", gibbs_araki, 1e-9),
            self._timed(context, "dlr-kms", dlr_kms, 1e-6),
        ]


class DlrSuite(BaseSuite):
    """DLR equation for the Gibbs state and, for classical φ, the classical reduction."""

    def get_name(self) -> str:
        return "dlr"

    def get_description(self) -> str:
        return "DLR equation, positivity survey and classical reduction"

    def run(self, context: SuiteContext) -> list[CheckResult]:
        params = context.parameters()
        generator = hamiltonian(context.interaction, context.ambient)
        state = DensityState.gibbs(generator, context.beta)

        def dlr() -> float:
            rng = context.rng(0)
            return max(
                dlr_check(state.density, params, _unit(random_operator(context.ambient, rng)))
                for _ in range(context.trials)
            )

        survey = positivity_survey(params, context.rng(1), context.trials)
        results = [
            self._timed(context, "dlr", dlr, 1e-8),
            CheckResult(
                "positivity-survey",
                f"{context.describe()} negative {survey.violations}/{survey.trials}",
                survey.violation_rate,
                1.0,
                seed=context.seed,
                passed=True,
            ),
        ]
        if not context.interaction.is_classical():
            return results

        def classical_state() -> float:
            return is_classical_state(state).residual

        def classical_kernel() -> float:
            worst = 0.0
            for boundary in SpinConfiguration.all(context.outside):
                kernel = classical_dlr_kernel(
                    context.interaction, context.region, context.beta, boundary, context.ambient
                )
                conditional = conditional_kernel(state.density, context.region, boundary)
                functional = boundary_functional(params, boundary)
                diagonal = np.real(np.diag(functional.density_matrix()))
                worst = max(
                    worst, np.abs(kernel - conditional).max(), np.abs(kernel - diagonal).max()
                )
            return worst

        results.append(self._timed(context, "classical-state", classical_state, 1e-12))
        results.append(self._timed(context, "classical-kernel", classical_kernel, 1e-12))
        return results


class SpecificationSuite(BaseSuite):
    """The four specification axioms on random observables and boundaries."""

    def get_name(self) -> str:
        return "specification"

    def get_description(self) -> str:
        return "Linearity, positivity, self-adjointness, locality and tower identity"

    def run(self, context: SuiteContext) -> list[CheckResult]:
        transform = corrupt_density if context.inject_corruption else None
        return specification_check(
            context.parameters(),
            context.rng(0),
            trials=context.trials,
            density_transform=transform,
            seed=context.seed,
        )


def _without_straddling(phi: Interaction, inside: Region) -> Interaction:
    """Drop jumps whose flip set meets both Λ and its complement."""
    kept = [
        t
        for t in phi.terms
        if t.flip_sites.isdisjoint(inside) or t.flip_sites.issubset(inside)
    ]
    return Interaction(kept, phi.range, phi.model)


def _boundary_jumps(phi: Interaction, universe: Region, outside: Region) -> list:
    return [
        t
        for t in phi.terms_within(universe)
        if not t.is_diagonal and t.flip_sites.issubset(outside)
    ]


def _interval_rule() -> list[tuple[tuple[float, ...], float]]:
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
    return [((float(t),), float(w)) for t, w in zip((nodes + 1) / 2, weights / 2)]


def _simplex_rule() -> list[tuple[tuple[float, ...], float]]:
    """Gauss rule on 0 < t1 < t2 < 1 through t1 = s·u, t2 = s."""
    nodes, weights = np.polynomial.legendre.leggauss(SIMPLEX_NODES)
    nodes, weights = (nodes + 1) / 2, weights / 2
    return [
        ((float(s * u), float(s)), float(ws * wu * s))
        for s, ws in zip(nodes, weights)
        for u, wu in zip(nodes, weights)
    ]


def random_boundary_path(
    phi: Interaction,
    universe: Region,
    outside: Region,
    rng: np.random.Generator,
    start: SpinConfiguration | None = None,
    max_jumps: int = 2,
) -> JumpPath:
    """A path on ``outside`` with up to ``max_jumps`` jumps drawn from φ's boundary terms."""
    if start is None:
        start = SpinConfiguration.from_index(outside, int(rng.integers(2 ** len(outside))))
    candidates = _boundary_jumps(phi, universe, outside)
    count = int(rng.integers(max_jumps + 1)) if candidates else 0
    times = np.sort(rng.uniform(size=count))
    chosen = [candidates[int(rng.integers(len(candidates)))] for _ in range(count)]
    return JumpPath.from_jumps(
        start, [(t, term.sign_sites, term.flip_sites) for t, term in zip(times, chosen)]
    )


class LemmaSuite(BaseSuite):
    """Path representation, splitting, gluing and adjoint identities."""

    def get_name(self) -> str:
        return "lemmas"

    def get_description(self) -> str:
        return "Path series against the oracle and the boundary path identities"

    def run(self, context: SuiteContext) -> list[CheckResult]:
        phi = context.interaction
        region, ambient, outside, beta = (
            context.region,
            context.ambient,
            context.outside,
            context.beta,
        )
        order = context.order if context.order is not None else get_settings().series_order
        oracle_universe = exp_oracle(split(phi, ambient, ambient), beta)
        straddle_free = _without_straddling(phi, region)

        def oracle_equivalence() -> float:
            bundle = split(phi, region, ambient)
            series = exp_series(bundle, beta, order, event_bus=context.event_bus)
            return (series.value - exp_oracle(bundle, beta)).max_abs()

        def product_representation() -> float:
            expansion = boundary_expansion(phi, region, ambient, beta, order)
            return max(0.0, (expansion.total() - oracle_universe).max_abs() - expansion.tail_bound)

        def splitting() -> float:
            expansion = boundary_expansion(straddle_free, region, ambient, beta, 2)
            terms = _boundary_jumps(straddle_free, ambient, outside)
            worst = 0.0
            for count, rule in ((1, _interval_rule()), (2, _simplex_rule())):
                blocks: dict[tuple[int, int], LocalOperator] = {}
                arrows: dict[tuple[int, int], tuple[SpinConfiguration, FlipSet]] = {}
                for start in SpinConfiguration.all(outside):
                    for chosen in itertools.product(terms, repeat=count):
                        for times, weight in rule:
                            jumps = [
                                (t, term.sign_sites, term.flip_sites)
                                for t, term in zip(times, chosen)
                            ]
                            path = JumpPath.from_jumps(start, jumps)
                            scalar = boundary_weight(straddle_free, region, path, beta)
                            density = boundary_density(straddle_free, region, path, beta).value
                            flip = path.net_flip()
                            key = (path.end.index(), flip.index())
                            arrows[key] = (path.end, flip)
                            blocks[key] = blocks.get(key, LocalOperator.zero(region)) + density * (
                                weight * scalar
                            )
                for key, integral in blocks.items():
                    end, flip = arrows[key]
                    block = expansion.terms[count].slice(region, end, flip)
                    worst = max(worst, (block - integral).max_abs())
            return worst

        def gluing() -> float:
            rng = context.rng(0)
            worst = 0.0
            for _ in range(context.trials):
                first = random_boundary_path(phi, ambient, outside, rng)
                second = random_boundary_path(phi, ambient, outside, rng, start=first.end)
                later = beta * float(rng.uniform(0.5, 1.5))
                glued = concatenate(first, second, beta / (beta + later))
                product = convolve(
                    boundary_density(phi, region, first, beta).value,
                    boundary_density(phi, region, second, later).value,
                )
                direct = boundary_density(phi, region, glued, beta + later).value
                worst = max(worst, (product - direct).max_abs())
            return worst

        def adjoint() -> float:
            rng = context.rng(1)
            worst = 0.0
            for _ in range(context.trials):
                path = random_boundary_path(phi, ambient, outside, rng)
                forward = boundary_density(phi, region, path, beta).value
                backward = boundary_density(phi, region, reverse(path), beta).value
                worst = max(worst, (forward.adjoint() - backward).max_abs())
            return worst

        return [
            self._timed(context, "oracle-equivalence", oracle_equivalence, 1e-8),
            self._timed(context, "product-representation", product_representation, 1e-8),
            self._timed(context, "splitting", splitting, 1e-8),
            self._timed(context, "gluing", gluing, 1e-10),
            self._timed(context, "adjoint", adjoint, 1e-10),
        ]


def default_registry(event_bus: EventBus | None = None) -> CheckRegistry:
    registry = CheckRegistry(event_bus)
    for suite in (KmsSuite(), DlrSuite(), SpecificationSuite(), LemmaSuite()):
        registry.register_suite(suite)
    return registry
