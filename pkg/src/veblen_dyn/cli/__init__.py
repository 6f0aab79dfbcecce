"""Command-line interface."""

from veblen_dyn.cli.main import app

__all__ = ["app"]
