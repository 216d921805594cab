"""
Time-ordered integrals over the simplex.

For square matrices G and C,

    T_n = ∫_{s_0+…+s_n=1} e^{s_0 G} C e^{s_1 G} C ⋯ C e^{s_n G} ds

is the n-th term of e^{G+C} = Σ_n T_n. All T_n up to order K are the first
block row of the exponential of one block-bidiagonal matrix with G on the
diagonal and C above it.
"""

import math

import numpy as np
import scipy.linalg

from ...core.config import get_settings
from ...core.errors import TruncationError


def simplex_series(generator: np.ndarray, coupling: np.ndarray, order: int) -> list[np.ndarray]:
    """
    T_0, …, T_K for the splitting G + C.

    Raises:
        TruncationError: If order < 0
    """
    if order < 0:
        raise TruncationError(f"Truncation order must be non-negative, got {order}")
    g = np.asarray(generator, dtype=complex)
    c = np.asarray(coupling, dtype=complex)
    d = g.shape[0]
    block = np.zeros(((order + 1) * d, (order + 1) * d), dtype=complex)
    for k in range(order + 1):
        block[k * d : (k + 1) * d, k * d : (k + 1) * d] = g
        if k < order:
            block[k * d : (k + 1) * d, (k + 1) * d : (k + 2) * d] = c
    full = scipy.linalg.expm(block)
    return [full[:d, k * d : (k + 1) * d].copy() for k in range(order + 1)]


def ordered_weight(
    energies: np.ndarray | list[float], beta: complex, tolerance: float | None = None
) -> complex | float:
    """
    ∫ over 0 ≤ t_1 ≤ … ≤ t_n ≤ 1 of exp(−β Σ_k (t_{k+1} − t_k) E_k), t_0 = 0, t_{n+1} = 1.

    This is the divided difference of x ↦ e^x at the nodes −βE_0, …, −βE_n.
    Real β gives a positive float, complex β a complex number.
    """
    if tolerance is None:
        tolerance = get_settings().confluence_tolerance
    nodes = -complex(beta) * np.asarray(energies, dtype=float)
    n = nodes.shape[0] - 1
    if n < 0:
        raise ValueError("At least one energy is required")

    scale = max(1.0, float(np.abs(nodes).max()))
    if np.abs(nodes - nodes[0]).max() <= tolerance * scale:
        value = np.exp(nodes.mean()) / math.factorial(n)
    elif n == 1:
        gap = nodes[1] - nodes[0]
        value = np.exp(nodes[0]) * np.expm1(gap) / gap
    else:
        shift = nodes.real.max()
        bidiagonal = np.diag(nodes - shift) + np.diag(np.ones(n), 1)
        value = scipy.linalg.expm(bidiagonal)[0, n] * np.exp(shift)

    if isinstance(beta, complex) or np.iscomplexobj(beta):
        return complex(value)
    return float(np.real(value))


def series_tail_bound(coupling_norm: float, generator_norm: float, order: int) -> float:
    """
    x^{N+1}/(N+1)! · e^x · e^y for ‖C‖ ≤ x, ‖e^{sG}‖ ≤ e^{sy}.
    """
    if coupling_norm <= 0.0:
        return 0.0
    log_bound = (
        (order + 1) * math.log(coupling_norm)
        - math.lgamma(order + 2)
        + coupling_norm
        + generator_norm
    )
    return math.exp(log_bound) if log_bound < 700 else math.inf
