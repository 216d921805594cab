"""
Finite transformation groupoid over a lattice region and its convolution algebra.
"""

from .lattice import (
    FlipSet,
    GroupoidArrow,
    Region,
    Site,
    SpinConfiguration,
    SpinModel,
    as_site,
    flip_apply,
)
from .operator import (
    LocalOperator,
    adjoint,
    convolve,
    embed,
    from_matrix,
    random_operator,
    tensor,
    to_matrix,
    trace,
)
from .pauli import pauli_basis, pauli_column, pauli_string, pauli_x, pauli_y, pauli_z

__all__ = [
    "FlipSet",
    "GroupoidArrow",
    "LocalOperator",
    "Region",
    "Site",
    "SpinConfiguration",
    "SpinModel",
    "adjoint",
    "as_site",
    "convolve",
    "embed",
    "flip_apply",
    "from_matrix",
    "pauli_basis",
    "pauli_column",
    "pauli_string",
    "pauli_x",
    "pauli_y",
    "pauli_z",
    "random_operator",
    "tensor",
    "to_matrix",
    "trace",
]
