"""
Logging configuration module.

Routes loguru output to stderr (and optionally a rotating file) so that
stdout stays reserved for reports. Records carry a ``component`` field
naming the mfkit module that emitted them.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from .constants import DEFAULT_LOG_LEVEL, LOG_RETENTION, LOG_ROTATION

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[component]}</cyan>:<cyan>{function}</cyan> | "
    "<level>{message}</level>"
)
FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | pid {process} | "
    "{extra[component]}:{function}:{line} | {message}"
)

logger.configure(extra={"component": "mfkit"})

_active_level = DEFAULT_LOG_LEVEL


def setup_logger(
    log_level: str = DEFAULT_LOG_LEVEL,
    log_file: Optional[Path] = None,
    rotation: str = LOG_ROTATION,
    retention: str = LOG_RETENTION,
    compression: str = "zip",
) -> None:
    """
    Configure the application logger.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file. If None, only stderr output
        rotation: When to rotate the log file (size or time)
        retention: How long to keep old logs
        compression: Compression format for old logs

    Example:
        >>> setup_logger("DEBUG", Path("logs/classify.log"))
    """
    global _active_level
    _active_level = log_level

    logger.remove()
    logger.add(sys.stderr, level=log_level, format=CONSOLE_FORMAT, colorize=True)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            level=log_level,
            format=FILE_FORMAT,
            rotation=rotation,
            retention=retention,
            compression=compression,
            enqueue=True,
        )

    logger.bind(component="logger").debug(f"Logger initialized with level: {log_level}")


def active_level() -> str:
    """Level set by the last setup_logger call."""
    return _active_level


def init_worker_logging(log_level: str = DEFAULT_LOG_LEVEL) -> None:
    """
    Process-pool initializer: stderr only, at the given level.

    Forked workers inherit the parent's sinks, but a rotating file sink must
    not be written from several processes, so it is dropped here.
    """
    logger.remove()
    logger.add(sys.stderr, level=log_level, format=CONSOLE_FORMAT, colorize=False)


def get_logger(component: Optional[str] = None):
    """
    Get the logger, bound to a component name.

    Example:
        >>> log = get_logger("groebner")
        >>> log.debug("Buchberger started")
    """
    if component is None:
        return logger
    return logger.bind(component=component)
