"""
Event system for run progress.

Evaluators and check suites publish dataclass events on an EventBus so the
CLI (or a test) can observe a run without the numerical code knowing who
listens.
"""

from .bus import EventBus
from .types import (
    CheckCompletedEvent,
    EvaluationCompletedEvent,
    Event,
    RunStartedEvent,
    SampleBlockCompletedEvent,
    SuiteCompletedEvent,
)

__all__ = [
    "EventBus",
    "Event",
    "RunStartedEvent",
    "EvaluationCompletedEvent",
    "SampleBlockCompletedEvent",
    "CheckCompletedEvent",
    "SuiteCompletedEvent",
]
