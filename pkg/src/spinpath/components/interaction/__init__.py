"""
Pauli-string interactions, Hamiltonians, surface terms and model files.
"""

from .encoding import EncodingDetector
from .hamiltonian import (
    HamiltonianBundle,
    JumpTerm,
    boundary_hamiltonian,
    hamiltonian,
    phase_factor,
    split,
    surface_term,
)
from .interaction import (
    Interaction,
    PauliTerm,
    Violation,
    enlarged_region,
    is_classical,
    polar_form,
    validate,
)
from .models import ising_chain, random_interaction, transverse_field_ising
from .parser import ParsedModel, format_model, load_model, parse_model

__all__ = [
    "EncodingDetector",
    "HamiltonianBundle",
    "Interaction",
    "JumpTerm",
    "ParsedModel",
    "PauliTerm",
    "Violation",
    "boundary_hamiltonian",
    "enlarged_region",
    "format_model",
    "hamiltonian",
    "ising_chain",
    "is_classical",
    "load_model",
    "parse_model",
    "phase_factor",
    "polar_form",
    "random_interaction",
    "split",
    "surface_term",
    "transverse_field_ising",
    "validate",
]
