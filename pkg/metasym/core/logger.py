"""Structured logging configuration for Metasym."""

import logging
import sys

from metasym.core.config import settings


def get_logger(name: str, level: int | str | None = None) -> logging.Logger:
    """Return a configured logger instance.

    Records go to stderr; stdout is reserved for JSON reports.

    Args:
        name: Logger name (typically __name__).
        level: Logging level (defaults to ``settings.log_level``).

    Returns:
        A configured logging.Logger.
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            fmt="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    logger.setLevel(level if level is not None else settings.log_level.upper())
    return logger
