"""
Boundary-conditioned densities and the expansion in boundary jumps.

Fix Λ inside a finite universe U and write O = U ∖ Λ. A boundary path α on O
freezes the outside configuration on each of its constant pieces, so the
inside evolves with the conditioned Hamiltonian H^{ω_j} for time s_j, and each
boundary jump acts inside only through the σ^(3) signs of its sign sites in Λ:

    D^α = e^{−s_0 β H^{ω_0}} K_1 e^{−s_1 β H^{ω_1}} K_2 ⋯ K_n e^{−s_n β H^{ω_n}}.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ...core.errors import IncoherentPathError, RegionError
from ..groupoid import LocalOperator, Region, convolve, pauli_string
from ..interaction import HamiltonianBundle, Interaction, hamiltonian
from .jump_path import JumpPath, classical_energy, spin_product
from .simplex import series_tail_bound, simplex_series

logger = logging.getLogger(__name__)

# (conditioned bundle, scaled β) -> (e^{−βH}, tail bound)
SegmentExponential = Callable[[HamiltonianBundle, complex], tuple[LocalOperator, float]]


def check_boundary_path(bundle: HamiltonianBundle, path: JumpPath) -> None:
    """
    Raises:
        RegionError: If the path region overlaps Λ or misses outside sites of the bundle
        IncoherentPathError: If a jump flips or signs sites outside Λ ∪ O
    """
    if not path.region.isdisjoint(bundle.region):
        raise RegionError(f"Boundary path on {path.region} overlaps {bundle.region}")
    if not bundle.outside.issubset(path.region):
        raise RegionError(
            f"Boundary path on {path.region} does not cover the surface sites {bundle.outside}"
        )
    universe = bundle.region | path.region
    for jump in path.jumps:
        if not jump.sign_sites.issubset(universe):
            raise IncoherentPathError(f"Sign sites {jump.sign_sites} leave {universe}")


def density_product(
    bundle: HamiltonianBundle,
    path: JumpPath,
    beta: complex,
    exponential: SegmentExponential,
) -> tuple[LocalOperator, float]:
    """
    D^α as the time-ordered product of segment exponentials and jump kernels.

    Returns the density together with a bound on its distance to the exact
    product, obtained by telescoping the segment tail bounds.
    """
    check_boundary_path(bundle, path)
    region = bundle.region
    pieces = path.segments()
    factors: list[LocalOperator] = []
    exact_norms, errors = [], []
    for k, (duration, config) in enumerate(pieces):
        conditioned = bundle.condition(config.restrict(bundle.outside))
        factor, tail = exponential(conditioned, duration * beta)
        factors.append(factor)
        exact_norms.append(float(np.exp(abs(duration * beta) * conditioned.total.norm())))
        errors.append(tail)
        if k < len(path.jumps):
            jump = path.jumps[k]
            factors.append(pauli_string(region, jump.sign_sites & region, ()))

    density = factors[0]
    for factor in factors[1:]:
        density = convolve(density, factor)

    bound = float(np.prod([a + e for a, e in zip(exact_norms, errors, strict=True)]))
    bound -= float(np.prod(exact_norms))
    return density, max(bound, 0.0) if any(errors) else 0.0


def boundary_weight(phi: Interaction, inside: Region, path: JumpPath, beta: complex) -> complex:
    """
    Scalar part of a boundary path's contribution.

    The product over boundary jumps of −β r e^{iπθ} times the outside signs
    of their sign sites before the jump, times e^{−β ∫ H^(0)_O} with H^(0)_O
    the classical terms inside O.

    Raises:
        IncoherentPathError: If a jump is not a term of ``phi``
    """
    outside = path.region
    energy = classical_energy(phi, outside)
    weight = complex(
        np.exp(-beta * sum(d * energy(c) for d, c in path.segments()))
    )
    before = path.start
    for jump in path.jumps:
        coefficient = phi.coefficient(jump.sign_sites, jump.flip_sites)
        if coefficient == 0:
            raise IncoherentPathError(
                f"No term with A = {jump.sign_sites}, B = {jump.flip_sites} in the interaction"
            )
        weight *= -beta * coefficient * spin_product(before, jump.sign_sites & outside)
        before = jump.config
    return weight


@dataclass(frozen=True)
class BoundaryExpansion:
    """
    e^{−βH_U} split by the number of boundary jumps.

    ``terms[N]`` collects every path with exactly N jumps flipping outside sites.
    """

    inside: Region
    universe: Region
    terms: tuple[LocalOperator, ...]
    tail_bound: float

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def total(self) -> LocalOperator:
        result = self.terms[0]
        for term in self.terms[1:]:
            result = result + term
        return result


def boundary_expansion(
    phi: Interaction, inside: Region, universe: Region, beta: complex, order: int
) -> BoundaryExpansion:
    """
    Expand e^{−βH_U} in the jumps that flip sites of U ∖ Λ, with exact inside evolution.

    Raises:
        RegionError: If Λ is not contained in U
        TruncationError: If order < 0
    """
    if not inside.issubset(universe):
        raise RegionError(f"{universe} does not contain {inside}")
    outside = universe - inside
    terms = phi.terms_within(universe)
    boundary_terms = [
        t for t in terms if not t.is_diagonal and not t.flip_sites.isdisjoint(outside)
    ]
    total = hamiltonian(phi, universe)
    coupling = LocalOperator.zero(universe)
    for term in boundary_terms:
        coupling = coupling + pauli_string(universe, term.sign_sites, term.flip_sites) * term.coefficient
    internal = total - coupling

    blocks = simplex_series(
        -beta * internal.to_matrix(), -beta * coupling.to_matrix(), order
    )
    rate = abs(beta) * sum(abs(t.coefficient) for t in boundary_terms)
    tail = series_tail_bound(rate, abs(beta) * internal.norm(), order)
    logger.debug(
        f"Boundary expansion on {universe} around {inside}: "
        f"{len(boundary_terms)} boundary jump terms, order {order}, tail {tail:.3g}"
    )
    return BoundaryExpansion(
        inside,
        universe,
        tuple(LocalOperator.from_matrix(universe, b) for b in blocks),
        tail,
    )
