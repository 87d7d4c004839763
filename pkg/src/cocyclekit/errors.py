"""Exception hierarchy.

Two top-level branches: ``InputError`` for anything the caller handed us
that cannot be processed (bad scalars, degenerate maps, malformed files),
and ``NumericFailureError`` for approximate computations that did not
reach the requested tolerance.  CLI exit codes map onto the branches:
input problems exit 1, numeric failures exit 2.
"""

from __future__ import annotations


class CocycleKitError(Exception):
    """Base class for every error raised by this package."""


class InputError(CocycleKitError):
    """The input is malformed, degenerate, or outside the supported domain."""


class ModeMismatchError(InputError):
    """Exact and approximate scalars were mixed in one computation."""


class DegenerateInputError(InputError):
    """An input polynomial or scalar is identically zero where that is not allowed."""


class DegreeError(InputError):
    """A declared degree does not match the data, or a degree bound is violated."""


class DegenerateMapError(InputError):
    """The rational map has a common factor or drops degree (not a genuine degree-d map)."""


class PathError(InputError):
    """A referenced file path does not exist or cannot be read."""


class ParseError(InputError):
    """A model or map file is syntactically or semantically malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedSpecError(InputError):
    """A weight specification of an unsupported kind was supplied."""


class UnsupportedModelError(InputError):
    """The model violates a structural requirement of the requested operation."""


class WholeSpaceError(InputError):
    """A threshold at or below the global minimum growth makes the level set everything."""

    def __init__(self, message: str, delta_star=None):
        self.delta_star = delta_star
        super().__init__(message)


class PreconditionError(InputError):
    """A documented precondition failed; carries a concrete witness."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotBackwardInvariantError(InputError):
    """A claimed backward-invariant set has a preimage point outside it."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NumericFailureError(CocycleKitError):
    """An iterative numeric routine failed to reach the requested tolerance."""

    def __init__(self, message: str, residuals=None):
        self.residuals = residuals
        super().__init__(message)


class AmbiguousMultiplicityError(NumericFailureError):
    """Root clustering could not assign multiplicities unambiguously."""

    def __init__(self, message: str, candidates=None):
        self.candidates = candidates
        super().__init__(message, residuals=None)


class ExactModeRequiredError(NumericFailureError):
    """The computation is only meaningful with exact scalars."""
