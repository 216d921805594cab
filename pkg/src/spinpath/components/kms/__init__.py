"""
Dynamics, the KMS condition, perturbed states and the classical reduction.
"""

from .classical import (
    ClassicalityReport,
    classical_dlr_kernel,
    classical_projection,
    conditional_kernel,
    is_classical_state,
)
from .dynamics import DynamicsSpec, evolve, kms_check
from .perturbation import (
    CocycleResult,
    PerturbationReport,
    PerturbedState,
    dyson_cocycle,
    exact_cocycle,
    gibbs_araki_check,
    perturbed_state,
)
from .states import DensityState

__all__ = [
    "ClassicalityReport",
    "CocycleResult",
    "DensityState",
    "DynamicsSpec",
    "PerturbationReport",
    "PerturbedState",
    "classical_dlr_kernel",
    "classical_projection",
    "conditional_kernel",
    "dyson_cocycle",
    "evolve",
    "exact_cocycle",
    "gibbs_araki_check",
    "is_classical_state",
    "kms_check",
    "perturbed_state",
]
