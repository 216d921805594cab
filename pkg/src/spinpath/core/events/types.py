"""
Event type definitions for spinpath runs.

Events describe progress of evaluations, Monte Carlo sampling and check
suites. They are plain dataclasses; the bus never inspects their payload.
"""

import itertools
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

_event_counter = itertools.count(1)


@dataclass
class Event:
    """Base class for all events."""

    timestamp: datetime = field(default_factory=datetime.now)
    source: str = field(default="unknown")
    event_id: str = field(default_factory=lambda: f"evt_{next(_event_counter)}")

    def __post_init__(self) -> None:
        if not self.source or self.source == "unknown":
            import inspect

            frame = inspect.currentframe()
            # __post_init__ <- generated __init__ <- caller
            if frame and frame.f_back and frame.f_back.f_back:
                caller = frame.f_back.f_back
                self.source = f"{caller.f_globals.get('__name__', 'unknown')}.{caller.f_code.co_name}"


@dataclass
class RunStartedEvent(Event):
    """Fired when a CLI command begins."""

    command: str = ""
    parameters: dict[str, Any] = field(default_factory=dict)


@dataclass
class EvaluationCompletedEvent(Event):
    """Fired when an exponential evaluator finishes."""

    evaluator: str = ""  # "oracle", "series", "mc"
    region_size: int = 0
    order: int = 0
    tail_bound: float = 0.0
    elapsed_ms: float = 0.0


@dataclass
class SampleBlockCompletedEvent(Event):
    """Fired for every finished Monte Carlo block."""

    block_index: int = 0
    samples: int = 0
    total_blocks: int = 0


@dataclass
class CheckCompletedEvent(Event):
    """Fired after a single check inside a suite."""

    suite: str = ""
    check: str = ""
    instance: str = ""
    residual: float = 0.0
    tolerance: float = 0.0
    passed: bool = True


@dataclass
class SuiteCompletedEvent(Event):
    """Fired when a check suite finishes."""

    suite: str = ""
    passed: int = 0
    failed: int = 0
    elapsed_ms: float = 0.0
