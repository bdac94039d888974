"""Logging configuration for atilde-exceptional."""

import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path


def setup_logging(
    level: str = "INFO",
    log_file: Path | None = None,
    format_string: str | None = None
) -> logging.Logger:
    """Configure the package logger.

    Python warnings (sympy deprecations among them) are routed through
    logging so they land in the same handlers.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path to log file (logs to stderr if not specified)
        format_string: Optional custom format string

    Returns:
        Configured package logger
    """
    if format_string is None:
        format_string = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
    numeric = getattr(logging, level.upper())

    logger = logging.getLogger("atilde_exceptional")
    logger.setLevel(numeric)
    logger.handlers.clear()

    formatter = logging.Formatter(format_string, datefmt="%Y-%m-%d %H:%M:%S")
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logging.captureWarnings(True)
    warnings_logger = logging.getLogger("py.warnings")
    warnings_logger.handlers = list(handlers)
    warnings_logger.propagate = False

    return logger


@contextmanager
def log_duration(logger: logging.Logger, what: str) -> Iterator[None]:
    """Log at DEBUG how long the enclosed block took."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.debug(f"{what} took {time.perf_counter() - start:.2f}s")
