"""
Check-suite registry for running suites by name.

Provides suite registration, lookup and execution with event publication and
per-suite run statistics.
"""

import logging
import time
from collections import defaultdict
from typing import Any

from ...core.errors import CheckError
from ...core.events.bus import EventBus
from ...core.events.types import CheckCompletedEvent, SuiteCompletedEvent
from ...core.interfaces import CheckResult, ICheckSuite

logger = logging.getLogger(__name__)


class CheckRegistry:
    """
    Registry for check suites and their execution.
    """

    def __init__(self, event_bus: EventBus | None = None):
        """
        Initialize check registry.

        Args:
            event_bus: Event bus for check and suite events
        """
        self._event_bus = event_bus
        self._suites: dict[str, ICheckSuite] = {}
        self._run_stats: dict[str, dict[str, Any]] = defaultdict(
            lambda: {"runs": 0, "passed": 0, "failed": 0, "total_time": 0.0}
        )

    def register_suite(self, suite: ICheckSuite, name: str | None = None) -> None:
        """
        Register a suite instance.

        Args:
            suite: Suite to register
            name: Optional name override (uses suite.get_name() if not provided)
        """
        suite_name = name or suite.get_name()
        if suite_name in self._suites:
            logger.warning(f"Overriding existing suite: {suite_name}")
        self._suites[suite_name] = suite
        logger.debug(f"Registered suite: {suite_name}")

    def unregister_suite(self, name: str) -> bool:
        return self._suites.pop(name, None) is not None

    def get_suite(self, name: str) -> ICheckSuite | None:
        return self._suites.get(name)

    def has_suite(self, name: str) -> bool:
        return name in self._suites

    def get_all_suite_names(self) -> list[str]:
        return sorted(self._suites)

    def run_suite(self, name: str, context: Any) -> list[CheckResult]:
        """
        Run a suite by name.

        Args:
            name: Suite name
            context: Context handed to the suite

        Returns:
            The suite's check results, in the suite's order

        Raises:
            CheckError: If the suite is unknown or cannot run
        """
        suite = self.get_suite(name)
        if suite is None:
            raise CheckError(f"Suite not found: {name}", name)

        start_time = time.perf_counter()
        try:
            results = suite.run(context)
        except CheckError:
            raise
        except Exception as e:
            logger.error(f"Suite execution error: {name} - {e}")
            raise CheckError(f"Suite execution failed: {name} - {e}", name, e) from e
        elapsed = (time.perf_counter() - start_time) * 1000

        failed = sum(1 for r in results if not r.passed)
        self._update_stats(name, elapsed, len(results) - failed, failed)

        if self._event_bus:
            for result in results:
                self._event_bus.emit(
                    CheckCompletedEvent(
                        suite=name,
                        check=result.name,
                        instance=result.instance,
                        residual=result.residual,
                        tolerance=result.tolerance,
                        passed=bool(result.passed),
                    )
                )
            self._event_bus.emit(
                SuiteCompletedEvent(
                    suite=name,
                    passed=len(results) - failed,
                    failed=failed,
                    elapsed_ms=elapsed,
                )
            )

        if failed:
            logger.warning(f"Suite {name}: {failed} of {len(results)} checks failed")
        else:
            logger.info(f"Suite {name}: all {len(results)} checks passed")
        return results

    def get_suite_info(self, name: str) -> dict[str, Any] | None:
        suite = self.get_suite(name)
        if suite is None:
            return None
        stats = self._run_stats.get(name, {})
        return {
            "name": name,
            "description": suite.get_description(),
            "runs": stats.get("runs", 0),
            "failed_checks": stats.get("failed", 0),
        }

    def get_run_stats(self) -> dict[str, dict[str, Any]]:
        return dict(self._run_stats)

    def _update_stats(self, name: str, elapsed: float, passed: int, failed: int) -> None:
        stats = self._run_stats[name]
        stats["runs"] += 1
        stats["passed"] += passed
        stats["failed"] += failed
        stats["total_time"] += elapsed
