"""
Perturbation cocycles, perturbed states and the Gibbs-Araki condition.

For a perturbation P the cocycle is Γ_t = e^{it(H+P)} e^{−itH}; the
perturbed state is ω^P(A) = ω(Γ* A Γ)/ω(Γ*Γ) with Γ = Γ_{iβ/2}.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ...core.config import get_settings
from ...core.errors import NonFaithfulStateError, RegionError
from ...core.interfaces import IState
from ..gibbs import GibbsParameters, lift
from ..groupoid import LocalOperator, Region, convolve, pauli_basis, tensor
from ..interaction import hamiltonian, surface_term
from ..paths import exponentiate, series_tail_bound, simplex_series
from .dynamics import DynamicsSpec
from .states import DensityState

logger = logging.getLogger(__name__)

# Pauli strings per side beyond which the factorization test set is sampled
MAX_BASIS = 256


def exact_cocycle(spec: DynamicsSpec, perturbation: LocalOperator, t: complex) -> LocalOperator:
    """Γ_t = e^{it(H+P)} e^{−itH} by matrix exponentials."""
    p = lift(perturbation, spec.region)
    t = complex(t)
    return convolve(exponentiate(spec.generator + p, -1j * t), exponentiate(spec.generator, 1j * t))


@dataclass(frozen=True)
class CocycleResult:
    value: LocalOperator
    order: int
    tail_bound: float


def dyson_cocycle(
    spec: DynamicsSpec, perturbation: LocalOperator, t: complex, order: int
) -> CocycleResult:
    """
    Dyson series of Γ_t truncated after ``order`` insertions of P.

    The tail bound covers complex t through the factor e^{2|Im t|‖H‖}.

    Raises:
        TruncationError: If order < 0
    """
    p = lift(perturbation, spec.region)
    t = complex(t)
    terms = simplex_series(
        1j * t * spec.generator.to_matrix(), 1j * t * p.to_matrix(), order
    )
    ordered = LocalOperator.from_matrix(spec.region, sum(terms))
    value = convolve(ordered, exponentiate(spec.generator, 1j * t))
    bound = series_tail_bound(
        abs(t) * p.norm(), 2 * abs(t.imag) * spec.generator.norm(), order
    )
    return CocycleResult(value, order, bound)


class PerturbedState(IState):
    """
    ω^P for a state ω on the generator's region.

    Raises:
        NonFaithfulStateError: If ω(Γ*Γ) is below the faithfulness threshold
    """

    def __init__(self, state: IState, spec: DynamicsSpec, perturbation: LocalOperator):
        if not spec.region.issubset(state.region):
            raise RegionError(f"State on {state.region} does not cover {spec.region}")
        self.state = state
        self.spec = spec
        self.perturbation = lift(perturbation, spec.region)
        self.cocycle = exact_cocycle(spec, self.perturbation, 0.5j * spec.beta)
        self._adjoint = self.cocycle.adjoint()
        self.normalization = state(convolve(self._adjoint, self.cocycle))
        threshold = get_settings().faithfulness_threshold
        if abs(self.normalization) < threshold:
            raise NonFaithfulStateError(
                f"ω(Γ*Γ) = {abs(self.normalization):.3g} is below {threshold:g}"
            )

    @property
    def region(self) -> Region:
        return self.spec.region

    def evaluate(self, operator: LocalOperator) -> complex:
        a = lift(operator, self.region)
        return self.state(convolve(convolve(self._adjoint, a), self.cocycle)) / self.normalization


def perturbed_state(state: IState, spec: DynamicsSpec, perturbation: LocalOperator) -> PerturbedState:
    return PerturbedState(state, spec, perturbation)


@dataclass(frozen=True)
class PerturbationReport:
    """
    Outcome of the Gibbs-Araki factorization test.

    ``values`` holds ω^P on the product test set, keyed by "inside|outside"
    Pauli labels.
    """

    perturbation: LocalOperator
    cocycle: LocalOperator
    factorization_residual: float
    condition_number: float
    values: dict[str, complex] = field(default_factory=dict)

    def passed(self, tolerance: float = 1e-9) -> bool:
        return self.factorization_residual <= tolerance


def _test_basis(region: Region, rng: np.random.Generator | None) -> list[tuple[str, LocalOperator]]:
    basis = list(pauli_basis(region))
    if len(basis) <= MAX_BASIS:
        return basis
    rng = rng if rng is not None else np.random.default_rng(0)
    keep = np.sort(rng.choice(len(basis), MAX_BASIS, replace=False))
    return [basis[0]] + [basis[i] for i in keep if i != 0]


def gibbs_araki_check(
    state: IState, params: GibbsParameters, rng: np.random.Generator | None = None
) -> PerturbationReport:
    """
    Perturb ω by P = −W_Λ and measure how far ω^P is from μ_Λ ⊗ μ̄.

    μ_Λ is the Gibbs state of H_Λ on Λ and μ̄(b) = ω^P(1 ⊗ b) the induced
    functional on ambient ∖ Λ. The residual is the largest deviation over
    products of Pauli strings on both sides.

    Raises:
        NonFaithfulStateError: If ω is not faithful on the cocycle
        RegionError: If ω does not live on the ambient region
    """
    if state.region != params.ambient:
        raise RegionError(f"State on {state.region}, expected {params.ambient}")
    spec = DynamicsSpec(hamiltonian(params.interaction, params.ambient), params.beta)
    perturbation = -surface_term(params.interaction, params.region, params.ambient)
    perturbed = perturbed_state(state, spec, perturbation)
    local = DensityState.gibbs(hamiltonian(params.interaction, params.region), params.beta)

    outside = params.outside
    inside_basis = _test_basis(params.region, rng)
    outside_basis = _test_basis(outside, rng)
    induced = {label: perturbed(b) for label, b in outside_basis}
    residual = 0.0
    values: dict[str, complex] = {}
    for a_label, a in inside_basis:
        expected_a = local(a)
        for b_label, b in outside_basis:
            value = perturbed(tensor(a, b) if len(outside) else a)
            values[f"{a_label}|{b_label}"] = value
            residual = max(residual, abs(value - expected_a * induced[b_label]))

    condition = float(np.linalg.cond(perturbed.cocycle.to_matrix()))
    logger.debug(
        f"Gibbs-Araki on {params.describe()}: residual {residual:.3g}, cond(Γ) {condition:.3g}"
    )
    return PerturbationReport(perturbed.perturbation, perturbed.cocycle, residual, condition, values)
