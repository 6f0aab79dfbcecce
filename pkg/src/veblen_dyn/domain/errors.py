"""Exceptions raised by the veblen-dyn library."""


class DomainError(ValueError):
    """An operation was evaluated outside the region where it is defined."""


class EquilibriumSearchError(RuntimeError):
    """The steady-state scan found no root of the scalar fixed-point condition."""


class OrbitDivergenceError(ArithmeticError):
    """An iterate of the map became non-finite."""

    def __init__(self, step: int, message: str = ""):
        """Record the step index at which the orbit diverged."""
        self.step = step
        super().__init__(message or f"Orbit became non-finite at step {step}")


class ConfigError(ValueError):
    """Experiment configuration could not be loaded or is invalid."""
