"""
Structured logging configuration for spinpath.

Library modules only ever call ``logging.getLogger(__name__)``. Handler setup
lives here: a coloured console stream on stderr (stdout is reserved for
reports), optional rotating log files under the platform log directory, and a
JSON formatter that keeps run metadata passed through ``extra``.
"""

import json
import logging
import logging.handlers
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any

from platformdirs import user_log_dir

# Attributes every LogRecord carries; anything else arrived through ``extra``.
_RECORD_ATTRIBUTES = frozenset(
    {
        "name",
        "msg",
        "args",
        "levelname",
        "levelno",
        "pathname",
        "filename",
        "module",
        "lineno",
        "funcName",
        "created",
        "msecs",
        "relativeCreated",
        "thread",
        "threadName",
        "processName",
        "process",
        "taskName",
        "getMessage",
        "exc_info",
        "exc_text",
        "stack_info",
    }
)


def _jsonable(value: Any) -> Any:
    """Coerce numpy scalars and complex numbers into JSON-friendly values."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):
        try:
            return _jsonable(value.item())
        except (TypeError, ValueError):
            pass
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


class StructuredFormatter(logging.Formatter):
    """
    Render log records as single-line JSON objects.
    """

    def format(self, record: logging.LogRecord) -> str:
        log_data: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        exc_info = record.exc_info
        if exc_info is True:
            exc_info = sys.exc_info()

        if exc_info and isinstance(exc_info, tuple) and exc_info != (None, None, None):
            log_data["exception"] = {
                "type": exc_info[0].__name__ if exc_info[0] else None,
                "message": str(exc_info[1]) if exc_info[1] else None,
                "traceback": traceback.format_exception(*exc_info),
            }

        extra_fields = {
            key: _jsonable(value)
            for key, value in record.__dict__.items()
            if key not in _RECORD_ATTRIBUTES
        }
        if extra_fields:
            log_data["extra"] = extra_fields

        return json.dumps(log_data)


class ColoredConsoleFormatter(logging.Formatter):
    """
    Console formatter with one colour per level.
    """

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
        "RESET": "\033[0m",
    }

    def __init__(self, use_color: bool = True):
        super().__init__()
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname, "") if self.use_color else ""
        reset = self.COLORS["RESET"] if self.use_color else ""

        timestamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S.%f")[:-3]
        formatted = f"{color}{timestamp} [{record.levelname:>8}] {record.name}: {record.getMessage()}{reset}"

        exc_info = record.exc_info
        if exc_info is True:
            exc_info = sys.exc_info()

        if exc_info and isinstance(exc_info, tuple) and exc_info != (None, None, None):
            formatted += f"\n{color}{self.formatException(exc_info)}{reset}"

        return formatted


class SpinpathLogger:
    """
    Owns the handlers spinpath installs on the root logger.
    """

    LOG_FILE = "spinpath.log"
    DEBUG_FILE = "debug.log"

    def __init__(self, app_name: str = "spinpath", log_dir: Path | None = None):
        """
        Args:
            app_name: Application name used to resolve the platform log directory
            log_dir: Explicit log directory, overriding the platform default
        """
        self.app_name = app_name
        self.log_dir = Path(log_dir) if log_dir else Path(user_log_dir(app_name))
        self._handlers: dict[str, logging.Handler] = {}
        self._configured = False

    @property
    def configured(self) -> bool:
        return self._configured

    def configure(
        self,
        level: str = "WARNING",
        console_output: bool = True,
        file_output: bool = False,
        structured_logs: bool = False,
        max_file_size: int = 10 * 1024 * 1024,
        backup_count: int = 5,
        debug_mode: bool = False,
        stream: Any = None,
    ) -> None:
        """
        Install handlers on the root logger.

        Args:
            level: Logging level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            console_output: Attach a console handler
            file_output: Attach a rotating file handler in the log directory
            structured_logs: Use JSON lines instead of plain text
            max_file_size: Rotation threshold in bytes
            backup_count: Rotated files to keep
            debug_mode: Log everything and add a verbose debug file
            stream: Console stream, stderr when omitted

        Raises:
            ValueError: If ``level`` is not a logging level name
        """
        if self._configured:
            self.cleanup()

        log_level = logging.getLevelName(level.upper())
        if not isinstance(log_level, int):
            raise ValueError(f"Unknown log level: {level}")

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG if debug_mode else log_level)

        if console_output:
            console_stream = stream if stream is not None else sys.stderr
            console_handler = logging.StreamHandler(console_stream)
            if structured_logs:
                console_handler.setFormatter(StructuredFormatter())
            else:
                is_tty = bool(getattr(console_stream, "isatty", lambda: False)())
                console_handler.setFormatter(ColoredConsoleFormatter(use_color=is_tty))
            console_handler.setLevel(logging.DEBUG if debug_mode else log_level)
            root_logger.addHandler(console_handler)
            self._handlers["console"] = console_handler

        if file_output or debug_mode:
            self.log_dir.mkdir(parents=True, exist_ok=True)

        if file_output:
            file_handler = logging.handlers.RotatingFileHandler(
                self.log_dir / self.LOG_FILE,
                maxBytes=max_file_size,
                backupCount=backup_count,
                encoding="utf-8",
            )
            if structured_logs:
                file_handler.setFormatter(StructuredFormatter())
            else:
                file_handler.setFormatter(
                    logging.Formatter(
                        "%(asctime)s [%(levelname)-8s] %(name)s: %(message)s",
                        datefmt="%Y-%m-%d %H:%M:%S",
                    )
                )
            file_handler.setLevel(logging.DEBUG if debug_mode else logging.INFO)
            root_logger.addHandler(file_handler)
            self._handlers["file"] = file_handler

        if debug_mode:
            debug_handler = logging.handlers.RotatingFileHandler(
                self.log_dir / self.DEBUG_FILE,
                maxBytes=max_file_size,
                backupCount=backup_count,
                encoding="utf-8",
            )
            debug_handler.setFormatter(StructuredFormatter())
            debug_handler.setLevel(logging.DEBUG)
            root_logger.addHandler(debug_handler)
            self._handlers["debug"] = debug_handler

        self._configured = True
        logging.getLogger(__name__).debug(
            "Logging configured",
            extra={"log_level": level, "console": console_output, "file": file_output},
        )

    def get_logger(self, name: str) -> logging.Logger:
        return logging.getLogger(name)

    def set_level(self, level: str, handler: str | None = None) -> None:
        """
        Change the level of one handler ('console', 'file', 'debug') or of all.
        """
        log_level = getattr(logging, level.upper())

        if handler and handler in self._handlers:
            self._handlers[handler].setLevel(log_level)
            return

        for h in self._handlers.values():
            h.setLevel(log_level)
        logging.getLogger().setLevel(log_level)

    def cleanup(self) -> None:
        """Detach and close the handlers this instance installed."""
        root_logger = logging.getLogger()
        for handler in self._handlers.values():
            root_logger.removeHandler(handler)
            handler.close()

        self._handlers.clear()
        self._configured = False

    def get_log_files(self) -> list[Path]:
        if not self.log_dir.exists():
            return []
        return sorted(self.log_dir.glob("*.log*"))


_default_logger: SpinpathLogger | None = None


def get_logger(name: str) -> logging.Logger:
    """
    Get a named logger, configuring console logging on first use.
    """
    global _default_logger
    if _default_logger is None:
        _default_logger = SpinpathLogger()
        _default_logger.configure()

    return _default_logger.get_logger(name)


def configure_logging(**kwargs: Any) -> SpinpathLogger:
    """
    Configure the process-wide logger.

    Args:
        **kwargs: Options forwarded to SpinpathLogger.configure()

    Returns:
        The configured SpinpathLogger
    """
    global _default_logger
    if _default_logger is None:
        _default_logger = SpinpathLogger()

    _default_logger.configure(**kwargs)
    return _default_logger


def cleanup_logging() -> None:
    global _default_logger
    if _default_logger:
        _default_logger.cleanup()
        _default_logger = None


class LogLevel:
    """Context manager for temporarily changing a logger's level."""

    def __init__(self, level: str, logger_name: str | None = None):
        self.new_level = getattr(logging, level.upper())
        self.logger = (
            logging.getLogger(logger_name) if logger_name else logging.getLogger()
        )
        self.old_level: int | None = None

    def __enter__(self) -> "LogLevel":
        self.old_level = self.logger.level
        self.logger.setLevel(self.new_level)
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        if self.old_level is not None:
            self.logger.setLevel(self.old_level)
