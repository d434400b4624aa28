"""Exception hierarchy shared by all gridforge modules.

Every domain error derives from :class:`GridforgeError` so callers (and the
command line frontend) can catch them in one place and report the class name.
"""

from __future__ import annotations


class GridforgeError(ValueError):
    """Base class of all domain errors."""


# gridcore
class BadLength(GridforgeError):
    pass


class NotAPermutation(GridforgeError):
    pass


class CoincidentMarkers(GridforgeError):
    pass


class ParseError(GridforgeError):
    """Malformed text in one of the line-oriented file formats."""


class NotClosedSubdiagram(GridforgeError):
    pass


# moves
class IllegalMove(GridforgeError):
    pass


class IllegalSequence(GridforgeError):
    pass


# invariants
class SameComponent(GridforgeError):
    pass


class NotAKnot(GridforgeError):
    pass


# paths
class NotAPath(GridforgeError):
    pass


class EndsMismatch(GridforgeError):
    pass


class CollisionAfterSplice(GridforgeError):
    pass


class DegeneratePath(GridforgeError):
    pass


class NotAnEnd(GridforgeError):
    pass


class NotATheta(GridforgeError):
    pass


# braids
class NotDestabilizable(GridforgeError):
    pass


class BadSplit(GridforgeError):
    pass


class StrandMismatch(GridforgeError):
    pass


class BadInput(GridforgeError):
    pass


class EqualityStepFailed(GridforgeError):
    """Raised when an internal braid identity fails; always an implementation bug."""
