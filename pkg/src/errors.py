"""
Exception hierarchy for the photocell simulator.

Every error carries the exit code the command line reports for its failure class.
"""

from typing import Sequence, Tuple


class PhotocellError(Exception):
    """Base class for all simulator errors."""

    exit_code = 1


class ConfigError(PhotocellError):
    """Configuration file could not be read or violates an invariant."""

    exit_code = 2


class InvalidArgumentError(PhotocellError, ValueError):
    """An operation was called outside its precondition."""

    exit_code = 2


class OutOfScopeError(PhotocellError):
    """The request asks for physics this model does not cover (e.g. J != 0)."""

    exit_code = 2


class SolverError(PhotocellError):
    """A steady-state solve or a propagation failed."""

    exit_code = 3


class DegenerateSteadyStateError(SolverError):
    """The generator has more than one closed communicating class."""

    def __init__(self, components: Sequence[Sequence[int]], labels: Sequence[str] = ()):
        self.components: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(k) for k in component) for component in components
        )
        if labels:
            named = [[labels[k] for k in component] for component in self.components]
        else:
            named = [list(component) for component in self.components]
        super().__init__(
            f"Steady state is not unique: {len(self.components)} disconnected "
            f"closed components {named}"
        )


class IntegrationError(SolverError):
    """Time propagation stopped before reaching the requested time."""

    def __init__(self, message: str, t_reached: float):
        self.t_reached = t_reached
        super().__init__(f"{message} (reached t={t_reached:.6g})")


class NonConvergenceError(SolverError):
    """Propagation reached its horizon without settling."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (final residual {residual:.3e})")


class UndefinedVoltageError(PhotocellError):
    """The voltage log term diverges because a population vanished."""

    exit_code = 3

    def __init__(self, population: str):
        self.population = population
        super().__init__(f"Voltage undefined: population {population} is zero")


class RootFindingError(PhotocellError):
    """No load rate reproduces the requested voltage."""

    exit_code = 4


class VoltageOutOfRangeError(RootFindingError):
    """The target voltage lies outside the reachable range."""


class AmbiguousVoltageError(RootFindingError):
    """V(Gamma) is not monotone and several brackets contain the target."""

    def __init__(self, target: float, brackets: Sequence[Tuple[float, float]]):
        self.brackets = tuple(brackets)
        super().__init__(
            f"Voltage {target:.6g} V is bracketed {len(self.brackets)} times "
            f"on the grid: {list(self.brackets)}"
        )
