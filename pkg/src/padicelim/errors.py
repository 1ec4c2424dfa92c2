"""Shared exception hierarchy.

Every violated hypothesis gets its own class so callers (and the CLI exit
code mapping) can tell invalid input apart from a failed verification.
InvalidPrimeError lives in exactnum but is re-exported here.
"""

from __future__ import annotations

from padicelim.exactnum import InvalidPrimeError

__all__ = [
    "PadicElimError",
    "InvalidPrimeError",
    "WindowError",
    "DigitError",
    "VLBoundError",
    "InvalidRangeError",
    "InvalidDegreeError",
    "NotPolynomialError",
    "NotGoodCandidateError",
    "EliminationIncompleteError",
    "PredictionUnavailableError",
]


class PadicElimError(ValueError):
    """Base class for all parameter/hypothesis violations in this package."""


class WindowError(PadicElimError):
    """n lies outside its admissible window."""


class DigitError(PadicElimError):
    """The leading base-p digit b exceeds p - 2."""


class VLBoundError(PadicElimError):
    """v_p(L) violates the required bound for the chosen mode."""


class InvalidRangeError(PadicElimError):
    """r (or another range-limited argument) is outside its stated range."""


class InvalidDegreeError(PadicElimError):
    """A degree index j is outside its admissible range."""


class NotPolynomialError(PadicElimError):
    """An exact monomial division left a remainder."""


class NotGoodCandidateError(PadicElimError):
    """The falling factorial [n]_{b+1} is not a p-unit, so n is not a

    candidate for the single-congruence kill."""


class EliminationIncompleteError(PadicElimError):
    """A sub-quotient index was left without a passing kill or an audit failed."""


class PredictionUnavailableError(PadicElimError):
    """Elimination succeeds but the reducibility check blocks the label."""
