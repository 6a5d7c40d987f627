"""Logging configuration for tiltver."""

import logging
import sys
from typing import Optional, TextIO

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Loggers the CLI sets explicitly; everything else under "tiltver" inherits.
APP_LOGGERS = ("tiltver", "tiltver.engine", "tiltver.data", "tiltver.verify")

_HANDLER_NAME = "tiltver-console"


def _resolve_level(level: Optional[str]) -> tuple[str, int]:
    name = (level or "INFO").upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        return "INFO", logging.INFO
    return name, numeric


def setup_logging(level: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """Install one console handler on the root logger.

    Args:
        level: Log level name; unknown names fall back to INFO
        stream: Destination for log records. The CLI passes stderr when a
                JSON report goes to stdout.
    """
    level_name, numeric_level = _resolve_level(level)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    for handler in [h for h in root_logger.handlers if h.get_name() == _HANDLER_NAME]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(stream or sys.stdout)
    console_handler.set_name(_HANDLER_NAME)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    root_logger.addHandler(console_handler)

    for name in APP_LOGGERS:
        logging.getLogger(name).setLevel(numeric_level)

    logging.getLogger("tiltver").debug(f"Logging configured with level: {level_name}")


def get_logger(name: str) -> logging.Logger:
    """Logger under the ``tiltver`` namespace; bare names are prefixed."""
    if name != "tiltver" and not name.startswith("tiltver."):
        name = f"tiltver.{name}"
    return logging.getLogger(name)
