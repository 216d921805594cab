"""
Executable specification axioms, the consistency (tower) identity and the
DLR equation at finite volume.
"""

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ...core.config import get_settings
from ...core.errors import InvalidStateError, RegionError
from ...core.interfaces import CheckResult
from ..groupoid import (
    FlipSet,
    LocalOperator,
    Region,
    SpinConfiguration,
    convolve,
    random_operator,
)
from .functional import (
    BoundaryMap,
    GibbsFunctional,
    boundary_functional,
    universe_exponential,
)
from .parameters import GibbsParameters, lift

logger = logging.getLogger(__name__)

DensityTransform = Callable[[LocalOperator], LocalOperator]

LINEAR_COEFFICIENTS = (0.7 - 0.2j, -1.3)


def consistency_check(
    params: GibbsParameters,
    inner: Region,
    operator: LocalOperator,
    config: SpinConfiguration,
    flip: FlipSet | None = None,
    exponential: LocalOperator | None = None,
) -> float:
    """
    |μ_Λ(f) − μ_Λ(μ_Λ'(f))| at the boundary arrow (ω, X).

    The inner map is evaluated arrow-wise on ambient ∖ Λ' and lifted back to
    the ambient region before the outer functional is applied.

    Raises:
        RegionError: If Λ' is not contained in Λ
    """
    if not inner.issubset(params.region):
        raise RegionError(f"{inner} is not contained in {params.region}")
    e = universe_exponential(params) if exponential is None else exponential
    lifted = lift(operator, params.ambient)
    inner_map = BoundaryMap(params.with_region(inner), e)
    nested = inner_map(lifted).embed(params.ambient)
    outer = boundary_functional(params, config, flip, e)
    return float(abs(outer(lifted) - outer(nested)))


def _transformed(functional: GibbsFunctional, transform: DensityTransform | None) -> GibbsFunctional:
    if transform is None:
        return functional
    density = transform(functional.density)
    return GibbsFunctional(
        functional.parameters,
        functional.region,
        density,
        density.trace(),
        functional.outside_config,
        functional.outside_flip,
        functional.description + " (transformed)",
    )


def _locality_region(params: GibbsParameters) -> Region:
    far = params.ambient - params.enlarged
    return far if len(far) else params.outside


def specification_check(
    params: GibbsParameters,
    rng: np.random.Generator,
    trials: int = 3,
    inner: Region | None = None,
    density_transform: DensityTransform | None = None,
    tolerance: float = 1e-8,
    seed: int | None = None,
) -> list[CheckResult]:
    """
    Check the four specification axioms on random observables and boundaries.

    1. linearity of μ^ω, normalization and positivity of its density
    2. the boundary map of a self-adjoint f is self-adjoint
    3. f supported away from Λ is fixed on every non-degenerate arrow
    4. the tower identity with Λ' ⊂ Λ (the first site of Λ by default)

    ``density_transform`` replaces the density of every boundary state
    before it is checked, which lets a corrupted density be injected.
    """
    settings = get_settings()
    e = universe_exponential(params)
    outer_map = BoundaryMap(params, e)
    inner = inner if inner is not None else Region(params.region.sites[:1])
    instance = params.describe()
    configs = [
        SpinConfiguration.from_index(
            params.outside, int(rng.integers(2 ** len(params.outside)))
        )
        for _ in range(trials)
    ]

    def timed(name: str, compute: Callable[[], float], limit: float) -> CheckResult:
        started = time.perf_counter()
        residual = float(compute())
        return CheckResult(
            name, instance, residual, limit, seed=seed, runtime=time.perf_counter() - started
        )

    def linearity() -> float:
        worst = 0.0
        a, b = LINEAR_COEFFICIENTS
        for config in configs:
            state = boundary_functional(params, config, exponential=e)
            f = random_operator(params.ambient, rng)
            g = random_operator(params.ambient, rng)
            worst = max(worst, abs(state(f * a + g * b) - a * state(f) - b * state(g)))
        return worst

    def normalization() -> float:
        identity = LocalOperator.identity(params.ambient)
        return max(
            abs(_transformed(boundary_functional(params, c, exponential=e), density_transform)(identity) - 1)
            for c in configs
        )

    def positivity() -> float:
        lowest = min(
            _transformed(boundary_functional(params, c, exponential=e), density_transform).min_eigenvalue()
            for c in configs
        )
        return max(0.0, -lowest)

    def self_adjointness() -> float:
        worst = 0.0
        for _ in range(trials):
            image = outer_map(random_operator(params.ambient, rng, hermitian=True))
            worst = max(worst, (image - image.adjoint()).max_abs())
        return worst

    def locality() -> float:
        support = _locality_region(params)
        worst = 0.0
        for _ in range(trials):
            h = random_operator(support, rng)
            image = outer_map(h).to_matrix()
            expected = h.embed(params.outside).to_matrix()
            worst = max(worst, float(np.abs(np.where(outer_map.degenerate, 0.0, image - expected)).max()))
        return worst

    def tower() -> float:
        support = params.ambient - (params.region - inner)
        worst = 0.0
        for config in configs:
            f = random_operator(support, rng)
            worst = max(worst, consistency_check(params, inner, f, config, exponential=e))
        return worst

    results = [
        timed("linearity", linearity, tolerance),
        timed("normalization", normalization, tolerance),
        timed("positivity", positivity, settings.positivity_tolerance),
        timed("self-adjointness", self_adjointness, tolerance),
        timed("locality", locality, tolerance),
        timed("tower", tower, tolerance),
    ]
    for result in results:
        if not result.passed:
            logger.warning(f"Specification check {result.name} failed on {instance}: {result.residual:.3g}")
    return results


def validate_density(rho: LocalOperator, tolerance: float | None = None) -> None:
    """
    Raises:
        InvalidStateError: If ρ is not Hermitian, positive and of unit trace
    """
    tolerance = get_settings().positivity_tolerance if tolerance is None else tolerance
    matrix = rho.to_matrix()
    if np.abs(matrix - matrix.conj().T).max(initial=0.0) > 1e-10:
        raise InvalidStateError("Density matrix is not Hermitian")
    lowest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2).min())
    if lowest < -tolerance:
        raise InvalidStateError(f"Density matrix has negative eigenvalue {lowest:.3g}")
    if abs(np.trace(matrix) - 1) > 1e-10:
        raise InvalidStateError(f"Density matrix has trace {np.trace(matrix):.6g}, expected 1")


def dlr_check(
    rho: LocalOperator,
    params: GibbsParameters,
    operator: LocalOperator,
    exponential: LocalOperator | None = None,
) -> float:
    """
    |Tr(ρ f) − Tr(ρ μ_Λ(f))| for a density matrix ρ on the ambient region.

    Raises:
        InvalidStateError: If ρ is not a density matrix
        RegionError: If ρ does not live on the ambient region
    """
    if rho.region != params.ambient:
        raise RegionError(f"State on {rho.region}, expected {params.ambient}")
    validate_density(rho)
    lifted = lift(operator, params.ambient)
    image = BoundaryMap(params, exponential)(lifted).embed(params.ambient)
    return float(abs(convolve(rho, lifted).trace() - convolve(rho, image).trace()))


@dataclass(frozen=True)
class PositivitySurvey:
    trials: int
    violations: int
    lowest_eigenvalue: float

    @property
    def violation_rate(self) -> float:
        return self.violations / self.trials if self.trials else 0.0


def positivity_survey(
    params: GibbsParameters, rng: np.random.Generator, trials: int = 10
) -> PositivitySurvey:
    """
    How often μ_Λ maps a positive f = A*A to an operator with a negative eigenvalue.

    Measured, not asserted.
    """
    tolerance = get_settings().positivity_tolerance
    boundary_map = BoundaryMap(params)
    violations = 0
    lowest = np.inf
    for _ in range(trials):
        a = random_operator(params.ambient, rng)
        image = boundary_map(convolve(a.adjoint(), a)).to_matrix()
        eigenvalue = float(np.linalg.eigvalsh((image + image.conj().T) / 2).min())
        lowest = min(lowest, eigenvalue)
        if eigenvalue < -tolerance:
            violations += 1
    logger.info(f"Positivity survey on {params.describe()}: {violations}/{trials} negative")
    return PositivitySurvey(trials, violations, float(lowest))
