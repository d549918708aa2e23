"""Stderr logging setup for command-line runs."""

import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | int = "WARNING") -> None:
    """Install a single stderr handler on the package logger.

    Library modules only create loggers; this is called once by the CLI.

    Args:
        level: Logging level name or number
    """
    package_logger = logging.getLogger("mmwave_channel_gen")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    package_logger.addHandler(handler)
    package_logger.setLevel(level.upper() if isinstance(level, str) else level)
    package_logger.propagate = False
