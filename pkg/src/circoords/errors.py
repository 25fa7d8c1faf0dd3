"""Exception types shared across the package."""

from __future__ import annotations


class CircoordsError(Exception):
    """Base class for all errors raised by this package.

    Attributes:
        code: short machine-parsable category tag used by the CLI.
    """

    code = "error"


class LiftError(CircoordsError):
    """A mod-p cocycle could not be lifted to an integer cocycle."""

    code = "lift"


class ConvergenceError(CircoordsError):
    """An iterative solver exhausted its budget before reaching tolerance."""

    code = "convergence"


class LoopError(CircoordsError):
    """A vertex loop is not a closed edge path in the complex."""

    code = "loop"


class FormatError(CircoordsError):
    """An input file does not match the expected format."""

    code = "format"
