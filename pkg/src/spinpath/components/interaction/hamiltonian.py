"""
Hamiltonians, surface terms and the classical/jump decomposition.

Throughout, ``ambient`` is the finite universe of sites: enlarged regions are
cut to it and terms not contained in it do not exist. ``split(φ, Λ, ambient)``
collects every term of the ambient universe that touches Λ, which is
H_Λ + W_Λ on Λ_R ∩ ambient, and writes it as

    H + W = H^(0) + Σ_X r_X S_X,    S_X = e^{iπθ_X} σ^(3)_A σ^(1)_B,

with H^(0) the diagonal (B = ∅) part and one jump term per off-diagonal
coefficient c_{A,B} = r·e^{iπθ}.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ...core.errors import (
    InsufficientBoundaryError,
    InvalidInteractionError,
    RegionError,
)
from ..groupoid import LocalOperator, Region, SpinConfiguration, pauli_column, pauli_string
from .interaction import Interaction, PauliTerm, enlarged_region, polar_form, validate

logger = logging.getLogger(__name__)

_PHASES = {0.0: 1.0 + 0j, 1.0: -1.0 + 0j, 0.5: 1j, -0.5: -1j}


def _require_valid(phi: Interaction) -> None:
    violations = validate(phi)
    if violations:
        raise InvalidInteractionError(
            f"Interaction has {len(violations)} violations: {violations[0]}", violations
        )


def _assemble(region: Region, terms: Iterable[PauliTerm]) -> LocalOperator:
    dimension = 2 ** len(region)
    coefficients = np.zeros((dimension, dimension), dtype=complex)
    for term in terms:
        column, values = pauli_column(region, term.sign_sites, term.flip_sites)
        coefficients[:, column] += term.coefficient * values
    return LocalOperator(region, coefficients)


def hamiltonian(phi: Interaction, region: Region) -> LocalOperator:
    """
    H_Λ = Σ_{X ⊆ Λ} φ_X.

    Raises:
        InvalidInteractionError: If ``phi`` violates an admissibility constraint
    """
    _require_valid(phi)
    return _assemble(region, phi.terms_within(region))


def surface_term(phi: Interaction, region: Region, ambient: Region) -> LocalOperator:
    """
    W_Λ: terms inside ``ambient`` that meet both Λ and ambient ∖ Λ, on Λ_R ∩ ambient.

    Raises:
        RegionError: If Λ is not contained in ``ambient``
    """
    if not region.issubset(ambient):
        raise RegionError(f"Ambient {ambient} does not contain {region}")
    _require_valid(phi)
    enlarged = enlarged_region(region, phi, ambient)
    terms = [
        t
        for t in phi.terms_within(enlarged)
        if not t.support.isdisjoint(region) and not t.support.issubset(region)
    ]
    return _assemble(enlarged, terms)


def phase_factor(theta: float) -> complex:
    return _PHASES.get(theta, complex(np.exp(1j * np.pi * theta)))


@dataclass(frozen=True)
class JumpTerm:
    """
    One off-diagonal term r·S_X, S_X = e^{iπθ} σ^(3)_A σ^(1)_B.

    ``label`` is the term's position in its bundle and serves as the point
    label in Poisson patterns.
    """

    sign_sites: Region
    flip_sites: Region
    rate: float
    theta: float
    label: int = 0

    @property
    def phase(self) -> complex:
        return phase_factor(self.theta)

    @property
    def key(self) -> tuple[Region, Region]:
        return (self.sign_sites, self.flip_sites)

    @property
    def support(self) -> Region:
        return self.sign_sites | self.flip_sites

    def pauli(self, region: Region) -> LocalOperator:
        """The bare string σ^(3)_A σ^(1)_B on ``region``."""
        return pauli_string(region, self.sign_sites, self.flip_sites)

    def operator(self, region: Region) -> LocalOperator:
        """S_X on ``region``."""
        return self.pauli(region) * self.phase


@dataclass(frozen=True)
class HamiltonianBundle:
    """
    H_Λ + W_Λ on the enlarged region with its classical/jump decomposition.
    """

    region: Region
    enlarged: Region
    total: LocalOperator
    classical: LocalOperator
    jumps: tuple[JumpTerm, ...]
    classical_coefficients: dict[Region, float] = field(default_factory=dict)

    @property
    def outside(self) -> Region:
        return self.enlarged - self.region

    @property
    def total_rate(self) -> float:
        return float(sum(j.rate for j in self.jumps))

    def energies(self) -> np.ndarray:
        """H^(0)(σ) for every configuration of the enlarged region, in index order."""
        return self.classical.coefficients[:, 0].real.copy()

    def classical_norm(self) -> float:
        energies = self.energies()
        return float(np.abs(energies).max(initial=0.0))

    def jump_operator(self, jump: JumpTerm) -> LocalOperator:
        return jump.operator(self.enlarged)

    def coupling(self) -> LocalOperator:
        """Σ r_X S_X on the enlarged region."""
        return self.total - self.classical

    @cached_property
    def jump_lookup(self) -> dict[tuple[Region, Region], JumpTerm]:
        return {j.key: j for j in self.jumps}

    def condition(self, outside_config: SpinConfiguration) -> "HamiltonianBundle":
        """
        Freeze the outside sites: the bundle of H^ω_Λ on Λ.

        Jumps flipping outside sites vanish on the diagonal outside block;
        outside sign factors of the remaining jumps are folded into θ.

        Raises:
            RegionError: If ``outside_config`` is not a configuration of Λ_R ∖ Λ
        """
        if outside_config.region != self.outside:
            raise RegionError(
                f"Conditioning needs a configuration on {self.outside}, "
                f"got one on {outside_config.region}"
            )

        def outside_sign(sites: Region) -> int:
            sign = 1
            for site in sites & self.outside:
                sign *= outside_config.spin(site)
            return sign

        jumps = []
        for jump in self.jumps:
            if not jump.flip_sites.issubset(self.region):
                continue
            theta = jump.theta
            if outside_sign(jump.sign_sites) < 0:
                theta = theta - 1.0 if theta > 0 else theta + 1.0
            jumps.append(
                JumpTerm(
                    jump.sign_sites & self.region,
                    jump.flip_sites,
                    jump.rate,
                    theta,
                    label=len(jumps),
                )
            )

        coefficients: dict[Region, float] = {}
        for sites, value in self.classical_coefficients.items():
            inner = sites & self.region
            coefficients[inner] = coefficients.get(inner, 0.0) + value * outside_sign(sites)

        return HamiltonianBundle(
            region=self.region,
            enlarged=self.region,
            total=self.total.slice(self.region, outside_config),
            classical=self.classical.slice(self.region, outside_config),
            jumps=tuple(jumps),
            classical_coefficients=coefficients,
        )


def split(phi: Interaction, region: Region, ambient: Region | None = None) -> HamiltonianBundle:
    """
    Classical part and jump list of H_Λ + W_Λ.

    Args:
        phi: Valid q = 2 interaction
        region: Λ
        ambient: Finite universe of sites; Λ_R when omitted

    Raises:
        InvalidInteractionError: If ``phi`` is invalid
        UnsupportedSpinError: If q ≠ 2
        RegionError: If Λ is not contained in ``ambient``
    """
    phi.model.require_qubits()
    _require_valid(phi)
    if ambient is not None and not region.issubset(ambient):
        raise RegionError(f"Ambient {ambient} does not contain {region}")

    enlarged = enlarged_region(region, phi, ambient)
    terms = [t for t in phi.terms_within(enlarged) if not t.support.isdisjoint(region)]

    diagonal = [t for t in terms if t.is_diagonal]
    jumps = []
    for term in terms:
        if term.is_diagonal:
            continue
        rate, theta = polar_form(term.coefficient)
        if rate == 0.0:
            continue
        jumps.append(JumpTerm(term.sign_sites, term.flip_sites, rate, theta, label=len(jumps)))

    bundle = HamiltonianBundle(
        region=region,
        enlarged=enlarged,
        total=_assemble(enlarged, terms),
        classical=_assemble(enlarged, diagonal),
        jumps=tuple(jumps),
        classical_coefficients={t.sign_sites: t.coefficient.real for t in diagonal},
    )
    logger.debug(
        f"Split on {region}: {len(diagonal)} classical terms, {len(jumps)} jumps, "
        f"enlarged region of {len(enlarged)} sites"
    )
    return bundle


def boundary_hamiltonian(
    phi: Interaction,
    region: Region,
    boundary: SpinConfiguration,
    ambient: Region | None = None,
) -> LocalOperator:
    """
    H^ω_Λ = (Id ⊗ ev_ω)(H_Λ + W_Λ) as an operator on Λ.

    Without ``ambient`` the universe is the support of φ, so ω must cover
    every site of Λ_R that carries a term. With it, ω must cover
    (Λ_R ∩ ambient) ∖ Λ.

    Raises:
        RegionError: If ω overlaps Λ
        InsufficientBoundaryError: If ω misses sites of the surface term
    """
    if not region.isdisjoint(boundary.region):
        raise RegionError(f"Boundary configuration on {boundary.region} overlaps {region}")
    needed = enlarged_region(region, phi, phi.sites() if ambient is None else ambient) - region
    if not needed.issubset(boundary.region):
        raise InsufficientBoundaryError(
            f"Boundary configuration on {boundary.region} does not cover {needed}"
        )
    universe = region | boundary.region if ambient is None else ambient
    bundle = split(phi, region, universe)
    if not len(bundle.outside):
        return bundle.total
    return bundle.total.slice(region, boundary.restrict(bundle.outside))
