"""
Core interfaces for spinpath components.

States are anything that assigns a number to a local operator; check suites
are named collections of residual computations. Both are abstract so that
Gibbs functionals, density matrices and perturbed states can be checked by
the same code.
"""

from .check import CheckResult, ICheckSuite
from .state import IState

__all__ = [
    "CheckResult",
    "ICheckSuite",
    "IState",
]
