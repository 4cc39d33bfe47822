"""Exception types shared across the package."""


class LatkitError(Exception):
    """Base class for all latkit errors."""


class DimensionMismatchError(LatkitError, ValueError):
    """Operand shapes are incompatible."""


class RankDeficientError(LatkitError, ValueError):
    """A matrix expected to have full row rank does not."""


class UnsupportedDistanceError(LatkitError, ValueError):
    """Requested BCH designed distance is outside the supported range."""


class NotFoundError(LatkitError, KeyError):
    """No registry entry for the requested code parameters."""


class TooLargeError(LatkitError, ValueError):
    """Problem size exceeds an enumeration bound."""


class PartialOrderViolatedError(LatkitError, ValueError):
    """Information set is not closed under the index partial order."""


class InfeasibleError(LatkitError, ValueError):
    """No information set with the requested parameters exists."""


class InvalidParamsError(LatkitError, ValueError):
    """Parameters violate an operation precondition."""


class DegenerateThetaError(LatkitError, ValueError):
    """Theta series has no terms beyond the zero vector."""


class BracketFailureError(LatkitError, ValueError):
    """Target probability is not achievable inside the search bracket."""


class NoCandidatesError(LatkitError, ValueError):
    """Candidate list is empty or no candidate satisfies the rule."""
