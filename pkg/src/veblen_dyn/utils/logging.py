"""Logging setup for the command-line front end."""

import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "veblen_dyn"


def setup_logging(level: str = "WARNING", console: Console | None = None) -> logging.Logger:
    """Route the package logger through a rich handler on stderr."""
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level.upper())

    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    return logger
