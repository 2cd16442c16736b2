"""Exception types shared across the package.

Errors fall into two classes: input/math conditions that a caller may
legitimately hit (bad syntax, degenerate input, singular solve), and
internal cross-check failures that indicate a transcription bug in one
of the closed formulas.  The CLI maps the former to exit code 1 or to a
verdict, the latter to exit code 2.
"""


class CrsError(Exception):
    """Base class for all package errors."""


class ExprSyntaxError(CrsError):
    """Raised on malformed expression text; carries the offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ArityError(CrsError):
    """Series operands live in incompatible variable spaces."""


class NonUnitError(CrsError):
    """Division or inversion by a series with zero constant term."""


class CompositionError(CrsError):
    """Substitution image violates a precondition (nonzero constant term)."""


class NotSolvableError(CrsError):
    """Implicit solve has a singular Jacobian at the origin."""


class DegenerateError(CrsError):
    """Levi form (or its rigid specialization) vanishes at the origin."""


class RealityError(CrsError):
    """Defining function violates the reality condition."""


class InternalCheckError(CrsError):
    """Two independent computation paths disagree: an implementation bug."""
