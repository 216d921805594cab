"""
Cauchy increments of free Gibbs values over growing boxes.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from ...core.errors import RegionError
from ..groupoid import LocalOperator, Region
from ..interaction import Interaction
from .functional import free_gibbs
from .parameters import GibbsParameters


@dataclass(frozen=True)
class ConvergenceDiagnostic:
    boxes: tuple[Region, ...]
    values: tuple[complex, ...]
    increments: tuple[float, ...]

    @property
    def last_increment(self) -> float:
        return self.increments[-1] if self.increments else 0.0


def convergence_diagnostic(
    phi: Interaction, beta: float, boxes: Sequence[Region], operator: LocalOperator
) -> ConvergenceDiagnostic:
    """
    Free Gibbs values of f on nested boxes and |v_{k+1} − v_k|.

    Raises:
        RegionError: If the boxes are not nested or f leaves the first box
    """
    if not boxes:
        raise ValueError("At least one box is required")
    if not operator.region.issubset(boxes[0]):
        raise RegionError(f"Observable on {operator.region} leaves the box {boxes[0]}")
    for smaller, larger in zip(boxes, boxes[1:]):
        if not smaller.issubset(larger):
            raise RegionError(f"Boxes are not nested: {smaller} ⊄ {larger}")
    values = tuple(
        free_gibbs(GibbsParameters(beta, phi, box, box)).evaluate(operator) for box in boxes
    )
    increments = tuple(abs(b - a) for a, b in zip(values, values[1:]))
    return ConvergenceDiagnostic(tuple(boxes), values, increments)
