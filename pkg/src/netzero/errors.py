"""Exception types shared across the package."""

from __future__ import annotations


class NetzeroError(Exception):
    """Base class for all package errors."""


class ParseError(NetzeroError):
    """Malformed config file: TOML syntax, wrong structure, or unknown keys."""


class ValidationError(NetzeroError):
    """A domain invariant is violated; message names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class EmptySeries(NetzeroError):
    """A series operation needs more nodes than were supplied."""


class MissingYear(NetzeroError):
    """Requested year is not covered by the series or state."""


class DomainError(NetzeroError):
    """Numeric argument outside its valid domain."""


class RangeError(NetzeroError):
    """Invalid integration or lookup range."""


class InfeasibleDispatch(NetzeroError):
    """Residual demand exceeds available non-coal potential."""

    def __init__(self, shortfall_twh: float):
        self.shortfall_twh = shortfall_twh
        super().__init__(f"dispatch infeasible, shortfall {shortfall_twh:.3f} TWh")


class Infeasible(NetzeroError):
    """Optimization problem has no feasible point."""

    def __init__(self, message: str, violated: tuple[str, ...] = ()):
        self.violated = violated
        detail = f" [{', '.join(violated)}]" if violated else ""
        super().__init__(message + detail)


class NoConvergence(NetzeroError):
    """Sequential LP hit the iteration cap; `.plan` carries the best iterate."""

    def __init__(self, message: str, plan=None):
        self.plan = plan
        super().__init__(message)


class NotSolved(NetzeroError):
    """Dual values requested from an unsolved or non-optimal LP."""


class MissingScenario(NetzeroError):
    """A required scenario is absent from the supplied result set."""


class EmptyTrajectory(NetzeroError):
    """Parity analysis received an empty grid-intensity trajectory."""
