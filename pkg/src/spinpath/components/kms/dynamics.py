"""
Finite-volume dynamics τ_t(A) = e^{−itH} A e^{itH} and the KMS condition.
"""

from dataclasses import dataclass

from ...core.interfaces import IState
from ..gibbs import lift
from ..groupoid import LocalOperator, Region, convolve
from ..paths import exponentiate


@dataclass(frozen=True)
class DynamicsSpec:
    """
    Generator H and inverse temperature β of a local dynamics.

    Raises:
        ValueError: If H is not self-adjoint or β ≤ 0
    """

    generator: LocalOperator
    beta: float

    def __post_init__(self) -> None:
        if not self.generator.is_self_adjoint(atol=1e-12):
            raise ValueError("Dynamics generator is not self-adjoint")
        if not self.beta > 0:
            raise ValueError(f"β must be positive, got {self.beta}")

    @property
    def region(self) -> Region:
        return self.generator.region


def evolve(spec: DynamicsSpec, t: complex, operator: LocalOperator) -> LocalOperator:
    """
    τ_t(A) for real or complex t; t = iβ gives e^{βH} A e^{−βH}.
    """
    a = lift(operator, spec.region)
    t = complex(t)
    if t == 0:
        return a
    forward = exponentiate(spec.generator, 1j * t)
    backward = exponentiate(spec.generator, -1j * t)
    return convolve(convolve(forward, a), backward)


def kms_check(state: IState, spec: DynamicsSpec, a: LocalOperator, b: LocalOperator) -> float:
    """|μ(AB) − μ(τ_{iβ}(B) A)|, with A and B supported inside the generator's region."""
    a = lift(a, spec.region)
    b = lift(b, spec.region)
    shifted = evolve(spec, 1j * spec.beta, b)
    return float(abs(state(convolve(a, b)) - state(convolve(shifted, a))))
