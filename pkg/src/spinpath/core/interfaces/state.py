"""
State interface: linear functionals on local operators.
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ...components.groupoid import LocalOperator, Region


class IState(ABC):
    """
    Interface for linear functionals on the local algebra of a finite region.

    Implementations embed operators that live on a subregion before
    evaluating, so callers may pass any operator supported inside ``region``.
    """

    @property
    @abstractmethod
    def region(self) -> "Region":
        """The region whose algebra the functional acts on."""
        pass

    @abstractmethod
    def evaluate(self, operator: "LocalOperator") -> complex:
        """
        Evaluate the functional on an operator.

        Args:
            operator: LocalOperator supported inside ``region``

        Returns:
            The (generally complex) value of the functional

        Raises:
            RegionError: If the operator is not supported inside ``region``
        """
        pass

    def __call__(self, operator: "LocalOperator") -> complex:
        return self.evaluate(operator)
