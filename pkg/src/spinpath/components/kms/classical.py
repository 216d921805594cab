"""
Classical projection, classical states and the classical DLR kernel.
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import scipy.special

from ...core.errors import InvalidInteractionError, RegionError
from ...core.interfaces import IState
from ..groupoid import LocalOperator, Region, SpinConfiguration, pauli_basis
from ..interaction import Interaction, boundary_hamiltonian


def classical_projection(operator: LocalOperator) -> LocalOperator:
    """E(A): keep the identity-flip arrows, zero the rest."""
    coefficients = np.zeros_like(operator.coefficients)
    coefficients[:, 0] = operator.coefficients[:, 0]
    return LocalOperator(operator.region, coefficients, operator.q)


@dataclass(frozen=True)
class ClassicalityReport:
    residual: float
    worst: str | None = None

    def passed(self, tolerance: float = 1e-12) -> bool:
        return self.residual <= tolerance


def is_classical_state(
    state: IState, test_set: Iterable[LocalOperator | tuple[str, LocalOperator]] | None = None
) -> ClassicalityReport:
    """
    max |μ(A) − μ(E(A))| over the test set; all Pauli strings of the state's
    region when no test set is given.
    """
    items = pauli_basis(state.region) if test_set is None else test_set
    residual, worst = 0.0, None
    for index, item in enumerate(items):
        label, operator = item if isinstance(item, tuple) else (str(index), item)
        gap = abs(state(operator) - state(classical_projection(operator)))
        if gap > residual:
            residual, worst = gap, label
    return ClassicalityReport(float(residual), worst)


def classical_dlr_kernel(
    phi: Interaction,
    region: Region,
    beta: float,
    boundary: SpinConfiguration,
    ambient: Region | None = None,
) -> np.ndarray:
    """
    σ_Λ ↦ e^{−βH^η_Λ(σ_Λ)} / Σ e^{−βH^η_Λ}, indexed like configurations of Λ.

    The universe is ``ambient``, or the support of φ when it is not given.

    Raises:
        InvalidInteractionError: If φ has off-diagonal terms
        InsufficientBoundaryError: If η misses a site coupled to Λ
    """
    if not phi.is_classical():
        raise InvalidInteractionError("The DLR kernel needs a classical interaction")
    energies = boundary_hamiltonian(phi, region, boundary, ambient).coefficients[:, 0].real
    return scipy.special.softmax(-beta * energies)


def conditional_kernel(
    density: LocalOperator, region: Region, boundary: SpinConfiguration
) -> np.ndarray:
    """
    Distribution of σ_Λ given η on the complement, from the diagonal of ρ.

    Raises:
        RegionError: If η does not cover the complement of Λ
        ValueError: If ρ gives η no weight
    """
    outside = density.region - region
    if boundary.region != outside:
        raise RegionError(f"Boundary on {boundary.region}, expected {outside}")
    weights = density.slice(region, boundary).coefficients[:, 0].real
    total = weights.sum()
    if total <= 0:
        raise ValueError(f"Boundary {boundary.values} has no weight")
    return weights / total
