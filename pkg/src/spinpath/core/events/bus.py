"""
Synchronous event bus.

Evaluators and check suites publish progress through an optional EventBus;
the CLI subscribes to log it. Handlers run in emission order and their
failures are logged, never propagated to the numerical code.
"""

import logging
import threading
from collections import defaultdict, deque
from collections.abc import Callable

from .types import Event

logger = logging.getLogger(__name__)

EventHandler = Callable[[Event], None]


class EventBus:
    """
    Publish/subscribe hub keyed by event type.

    Subscribing to a base class (``Event`` included) receives every subclass.
    Emission is thread-safe; handlers are called on the emitting thread.
    """

    def __init__(self, max_history: int = 1000) -> None:
        self._handlers: dict[type[Event], list[EventHandler]] = defaultdict(list)
        self._event_history: deque[Event] = deque(maxlen=max_history)
        self._lock = threading.RLock()
        self._debug_mode = False

    def subscribe(self, event_type: type[Event], handler: EventHandler) -> None:
        """
        Subscribe to events of a specific type.

        Args:
            event_type: The type of event to subscribe to
            handler: Callable receiving the event

        Raises:
            TypeError: If handler is not callable
        """
        if not callable(handler):
            raise TypeError(f"Handler must be callable, got {type(handler)}")

        with self._lock:
            self._handlers[event_type].append(handler)

        if self._debug_mode:
            logger.debug(f"Subscribed {handler} to {event_type.__name__}")

    def unsubscribe(self, event_type: type[Event], handler: EventHandler) -> bool:
        """
        Returns:
            True if handler was found and removed, False otherwise
        """
        with self._lock:
            try:
                self._handlers[event_type].remove(handler)
                return True
            except ValueError:
                if self._debug_mode:
                    logger.warning(
                        f"Handler {handler} not found for {event_type.__name__}"
                    )
                return False

    def emit(self, event: Event) -> None:
        if self._debug_mode:
            logger.debug(f"Emitting {type(event).__name__}: {event}")

        with self._lock:
            self._event_history.append(event)
            handlers = self._get_handlers_for_event(event)

        for handler in handlers:
            try:
                handler(event)
            except Exception as e:
                logger.error(
                    f"Error in handler {handler} for event {type(event).__name__}: {e}",
                    exc_info=True,
                )

    def _get_handlers_for_event(self, event: Event) -> list[EventHandler]:
        handlers: list[EventHandler] = []
        for event_type in type(event).__mro__:
            if isinstance(event_type, type) and issubclass(event_type, Event):
                handlers.extend(self._handlers.get(event_type, []))
        return handlers

    def get_event_history(
        self, limit: int | None = None, event_type: type[Event] | None = None
    ) -> list[Event]:
        """
        Recent events, most recent first, optionally filtered by type.
        """
        with self._lock:
            history = [
                e
                for e in reversed(self._event_history)
                if event_type is None or isinstance(e, event_type)
            ]
        if limit:
            return history[:limit]
        return history

    def clear_history(self) -> None:
        with self._lock:
            self._event_history.clear()

    def get_subscriber_count(self, event_type: type[Event]) -> int:
        return len(self._handlers.get(event_type, []))

    def set_debug_mode(self, enabled: bool) -> None:
        self._debug_mode = enabled
