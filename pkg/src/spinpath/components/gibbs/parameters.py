"""
Parameters shared by the finite-volume Gibbs functionals.
"""

from dataclasses import dataclass, replace

from ...core.errors import InvalidInteractionError, RegionError
from ..groupoid import LocalOperator, Region
from ..groupoid.operator import check_region_size
from ..interaction import Interaction, enlarged_region, validate

EXPONENTIAL_METHODS = ("oracle", "series")


@dataclass(frozen=True)
class GibbsParameters:
    """
    β, φ, the volume Λ and the finite universe ``ambient`` ⊇ Λ.

    ``evaluator`` picks how e^{−βH} is computed ("oracle" or "series", the
    latter truncated at ``order``).

    Raises:
        ValueError: If β ≤ 0 or the evaluator is unknown
        RegionError: If Λ is not contained in the ambient region
        InvalidInteractionError: If φ is not admissible
        RegionTooLargeError: If the ambient region exceeds the cap
    """

    beta: float
    interaction: Interaction
    region: Region
    ambient: Region
    evaluator: str = "oracle"
    order: int | None = None

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise ValueError(f"β must be positive, got {self.beta}")
        if self.evaluator not in EXPONENTIAL_METHODS:
            raise ValueError(
                f"Unknown evaluator {self.evaluator!r}, expected one of {EXPONENTIAL_METHODS}"
            )
        if not self.region.issubset(self.ambient):
            raise RegionError(f"Ambient {self.ambient} does not contain {self.region}")
        check_region_size(self.ambient)
        violations = validate(self.interaction)
        if violations:
            raise InvalidInteractionError(
                f"Interaction has {len(violations)} violations: {violations[0]}", violations
            )

    @property
    def outside(self) -> Region:
        return self.ambient - self.region

    @property
    def enlarged(self) -> Region:
        """Λ_R cut to the ambient region."""
        return enlarged_region(self.region, self.interaction, self.ambient)

    def with_region(self, region: Region) -> "GibbsParameters":
        return replace(self, region=region)

    def describe(self) -> str:
        return f"Λ={self.region} U={self.ambient} β={self.beta:g}"


def lift(operator: LocalOperator, region: Region) -> LocalOperator:
    """Embed an operator into ``region``.

    Raises:
        RegionError: If the operator is not supported inside ``region``
    """
    if not operator.region.issubset(region):
        raise RegionError(f"Operator on {operator.region} is not supported inside {region}")
    return operator.embed(region)
