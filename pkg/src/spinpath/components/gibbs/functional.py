"""
Finite-volume Gibbs functionals with configuration, path and jump-count
boundary conditions, and the boundary map f ↦ μ_Λ(f).

With E = e^{−βH_U} on the ambient universe U, O = U ∖ Λ and r = ι_X ω,

    μ^{ω,X}(F) = 𝟙[X ∩ Λ = ∅] · Tr_Λ(F_{r,ω} E_{ω,r}) / Z^{ω,X},   Z^{ω,X} = Tr_Λ E_{ω,r},

where A_{a,b} = ⟨a| A |b⟩_O is the outside block of A. E_{ω,r} collects the
paths running from ω at t = 0 to r at t = 1.
"""

import logging
from functools import cached_property

import numpy as np

from ...core.config import get_settings
from ...core.errors import DegeneratePartitionError, RegionError
from ...core.interfaces import IState
from ..groupoid import FlipSet, LocalOperator, Region, SpinConfiguration, convolve, flip_apply
from ..interaction import split
from ..paths import JumpPath, boundary_density, boundary_expansion, exp_oracle, exp_series
from .parameters import GibbsParameters, lift

logger = logging.getLogger(__name__)

DEGENERACY_THRESHOLD = 1e-12


def universe_exponential(params: GibbsParameters) -> LocalOperator:
    """e^{−βH_U} on the ambient region by the configured evaluator."""
    bundle = split(params.interaction, params.ambient, params.ambient)
    if params.evaluator == "series":
        return exp_series(bundle, params.beta, params.order).value
    return exp_oracle(bundle, params.beta)


class GibbsFunctional(IState):
    """
    Normalized functional Tr_Λ(F_{r,ω} · density) / Z on the algebra of ``region``.

    For the free functional there is no outside configuration and the
    density lives on the whole region. A gated functional (X meets Λ)
    vanishes identically.
    """

    def __init__(
        self,
        parameters: GibbsParameters,
        region: Region,
        density: LocalOperator,
        partition: complex,
        outside_config: SpinConfiguration | None = None,
        outside_flip: FlipSet | None = None,
        description: str = "",
        gated: bool = False,
    ):
        if not gated and partition == 0:
            raise DegeneratePartitionError(f"Partition function vanishes for {description}")
        self.parameters = parameters
        self._region = region
        self.density = density
        self.partition = complex(partition)
        self.outside_config = outside_config
        self.outside_flip = outside_flip
        self.description = description
        self.gated = gated

    @property
    def region(self) -> Region:
        return self._region

    @property
    def inside(self) -> Region:
        return self.density.region

    @property
    def is_diagonal_boundary(self) -> bool:
        return self.outside_flip is None or self.outside_flip.is_identity

    def evaluate(self, operator: LocalOperator) -> complex:
        if self.gated:
            return 0j
        lifted = lift(operator, self._region)
        if self.outside_config is not None:
            lifted = lifted.slice(self.inside, self.outside_config, self.outside_flip)
        return convolve(lifted, self.density).trace() / self.partition

    def density_matrix(self) -> np.ndarray:
        return self.density.to_matrix() / self.partition

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitized normalized density."""
        matrix = self.density_matrix()
        return float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2).min())

    def is_state(self, tolerance: float | None = None) -> bool:
        tolerance = get_settings().positivity_tolerance if tolerance is None else tolerance
        if self.gated or not self.is_diagonal_boundary:
            return False
        identity = LocalOperator.identity(self._region)
        return self.min_eigenvalue() >= -tolerance and abs(self.evaluate(identity) - 1) <= 1e-10

    def __repr__(self) -> str:
        return f"GibbsFunctional({self.description})"


def free_gibbs(params: GibbsParameters) -> GibbsFunctional:
    """The Gibbs state of H_{Λ_R} on Λ_R ∩ ambient, without boundary condition."""
    enlarged = params.enlarged
    bundle = split(params.interaction, enlarged, enlarged)
    if params.evaluator == "series":
        density = exp_series(bundle, params.beta, params.order).value
    else:
        density = exp_oracle(bundle, params.beta)
    return GibbsFunctional(
        params, enlarged, density, density.trace(), description=f"free {params.describe()}"
    )


def _outside_arrow(
    params: GibbsParameters, config: SpinConfiguration, flip: FlipSet | None
) -> tuple[FlipSet, bool]:
    """The outside part of X and whether X meets Λ."""
    outside = params.outside
    if config.region != outside:
        raise RegionError(f"Boundary configuration on {config.region}, expected {outside}")
    if flip is None:
        return FlipSet.identity(outside), False
    if flip.region == outside:
        return flip, False
    if flip.region != params.ambient:
        raise RegionError(f"Flip on {flip.region}, expected {outside} or {params.ambient}")
    return flip.restrict(outside), not flip.restrict(params.region).is_identity


def _check_partition(partition: complex, scale: float, description: str) -> None:
    if abs(partition) <= DEGENERACY_THRESHOLD * scale:
        raise DegeneratePartitionError(
            f"Partition function {partition:.3g} is degenerate for {description}"
        )


def boundary_functional(
    params: GibbsParameters,
    config: SpinConfiguration,
    flip: FlipSet | None = None,
    exponential: LocalOperator | None = None,
) -> GibbsFunctional:
    """
    μ^{ω,X} on the ambient algebra.

    Args:
        params: Gibbs parameters
        config: Outside configuration ω on ambient ∖ Λ
        flip: X on ambient ∖ Λ or on the ambient region; identity when omitted
        exponential: Precomputed e^{−βH_U}

    Raises:
        RegionError: If ω or X live on the wrong region
        DegeneratePartitionError: If Z^{ω,X} vanishes
    """
    outside_flip, gated = _outside_arrow(params, config, flip)
    description = f"boundary {params.describe()} ω={config.values} X={outside_flip.values}"
    if gated:
        return GibbsFunctional(
            params,
            params.ambient,
            LocalOperator.zero(params.region),
            1.0,
            config,
            outside_flip,
            description,
            gated=True,
        )
    e = universe_exponential(params) if exponential is None else exponential
    target = flip_apply(config, outside_flip)
    density = e.slice(params.region, target, outside_flip)
    partition = density.trace()
    scale = np.sqrt(
        abs(e.slice(params.region, config).trace()) * abs(e.slice(params.region, target).trace())
    )
    _check_partition(partition, scale, description)
    return GibbsFunctional(
        params, params.ambient, density, partition, config, outside_flip, description
    )


def path_functional(params: GibbsParameters, path: JumpPath) -> GibbsFunctional:
    """
    Functional with the density D^α of an explicit boundary path α.

    The functional acts on Λ ∪ region(α), evaluated at the arrow that runs
    from α's start to its end.
    """
    density = boundary_density(params.interaction, params.region, path, params.beta).value
    partition = density.trace()
    description = f"path {params.describe()} jumps={len(path)}"
    _check_partition(partition, float(np.abs(density.to_matrix()).sum()), description)
    return GibbsFunctional(
        params,
        params.region | path.region,
        density,
        partition,
        path.start,
        path.net_flip(),
        description,
    )


def fixed_jump_functional(
    params: GibbsParameters, config: SpinConfiguration, jumps: int
) -> GibbsFunctional:
    """
    μ^{ω,N}: only boundary paths from ω back to ω with exactly N boundary jumps.

    N = 0 is the state with the classical boundary condition ω.

    Raises:
        DegeneratePartitionError: If no such path carries weight
    """
    if config.region != params.outside:
        raise RegionError(f"Boundary configuration on {config.region}, expected {params.outside}")
    expansion = boundary_expansion(
        params.interaction, params.region, params.ambient, params.beta, jumps
    )
    density = expansion.terms[jumps].slice(params.region, config)
    partition = density.trace()
    description = f"fixed-jump {params.describe()} ω={config.values} N={jumps}"
    _check_partition(partition, float(np.abs(density.to_matrix()).sum()), description)
    return GibbsFunctional(params, params.ambient, density, partition, config, None, description)


class BoundaryMap:
    """
    f ↦ μ_Λ(f), an operator on ambient ∖ Λ evaluated arrow-wise.

    The entry at the arrow (s, X) with range r is μ^{s,X}(f); degenerate
    arrows map to 0.
    """

    def __init__(self, params: GibbsParameters, exponential: LocalOperator | None = None):
        self.params = params
        self.exponential = universe_exponential(params) if exponential is None else exponential
        self._tensor = self.exponential.split_tensor(params.region)

    @cached_property
    def normalizations(self) -> np.ndarray:
        """Z[r, s] = Tr_Λ E_{s,r}, indexed like the matrix of the output."""
        return np.einsum("jsjr->rs", self._tensor)

    @cached_property
    def degenerate(self) -> np.ndarray:
        z = self.normalizations
        diagonal = np.abs(np.diag(z))
        return np.abs(z) <= DEGENERACY_THRESHOLD * np.sqrt(np.outer(diagonal, diagonal))

    def __call__(self, operator: LocalOperator) -> LocalOperator:
        lifted = lift(operator, self.params.ambient)
        numerators = np.einsum("irjs,jsir->rs", lifted.split_tensor(self.params.region), self._tensor)
        values = np.where(self.degenerate, 0.0, numerators / np.where(self.degenerate, 1.0, self.normalizations))
        return LocalOperator.from_matrix(self.params.outside, values)


def boundary_map(
    params: GibbsParameters, operator: LocalOperator, exponential: LocalOperator | None = None
) -> LocalOperator:
    """μ_Λ(f) as an operator on ambient ∖ Λ."""
    return BoundaryMap(params, exponential)(operator)
