"""
Check-suite interface.

A suite turns a model and run parameters into a list of residuals, each
compared against its own tolerance. Suites report failures as data; they
raise CheckError only when they cannot run at all.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one residual computation.

    Attributes:
        name: Check name, stable across runs
        instance: Short description of the instance (regions, β, trial)
        residual: Measured residual (non-negative)
        tolerance: Bound the residual must not exceed
        seed: Seed the instance was drawn with, if any
        passed: Whether the check passed; derived from residual and tolerance
            unless a check inverts the comparison (failure witnesses)
        runtime: Seconds spent, kept out of report bodies
    """

    name: str
    instance: str
    residual: float
    tolerance: float
    seed: int | None = None
    passed: bool | None = None
    runtime: float = 0.0

    def __post_init__(self) -> None:
        if self.passed is None:
            object.__setattr__(self, "passed", bool(self.residual <= self.tolerance))


class ICheckSuite(ABC):
    """
    Interface for executable check suites.
    """

    @abstractmethod
    def get_name(self) -> str:
        """
        Returns:
            Name used on the command line (e.g. "kms")
        """
        pass

    @abstractmethod
    def get_description(self) -> str:
        pass

    @abstractmethod
    def run(self, context: Any) -> list[CheckResult]:
        """
        Run every check of the suite.

        Args:
            context: Suite context carrying the model and run parameters

        Returns:
            One CheckResult per executed check, in a deterministic order

        Raises:
            CheckError: If the suite cannot run on the given context
        """
        pass
