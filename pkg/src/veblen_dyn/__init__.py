"""veblen-dyn - environmental dynamics with green preferences and Veblen effects."""

__version__ = "0.1.0"
