"""
States given by density matrices.
"""

import numpy as np

from ...core.interfaces import IState
from ..gibbs import lift, validate_density
from ..groupoid import LocalOperator, Region, convolve
from ..paths import exponentiate


class DensityState(IState):
    """
    A ↦ Tr(ρ A) for a density matrix ρ.

    Raises:
        InvalidStateError: If ρ is not Hermitian, positive and of unit trace
    """

    def __init__(self, density: LocalOperator, validate: bool = True):
        if validate:
            validate_density(density)
        self.density = density

    @classmethod
    def gibbs(cls, generator: LocalOperator, beta: float) -> "DensityState":
        """e^{−βH}/Tr e^{−βH}."""
        unnormalized = exponentiate(generator, beta)
        return cls(unnormalized / unnormalized.trace().real)

    @classmethod
    def from_matrix(cls, region: Region, matrix: np.ndarray) -> "DensityState":
        return cls(LocalOperator.from_matrix(region, matrix))

    @property
    def region(self) -> Region:
        return self.density.region

    def evaluate(self, operator: LocalOperator) -> complex:
        return convolve(self.density, lift(operator, self.region)).trace()

    def __repr__(self) -> str:
        return f"DensityState(region={self.region})"
