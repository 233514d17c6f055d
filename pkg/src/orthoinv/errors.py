"""Exceptions shared across the package."""


class OrthoinvError(Exception):
    """Base class for package-specific failures."""


class NonSquareInput(OrthoinvError):
    """A polynomial square root was requested of a non-square."""


class NotInSubalgebra(OrthoinvError):
    """A polynomial could not be written in the distinguished generators."""


class AmbiguousSolution(OrthoinvError):
    """A linear solve met a dependency it asserts cannot exist."""


class NoSolution(OrthoinvError):
    """A linear system admitted no solution."""


class BudgetExceeded(OrthoinvError):
    """A construction would exceed the configured term budget."""


class CapExceeded(OrthoinvError):
    """An enumeration grew past its configured cap."""
