"""Exception types.  Every domain failure derives from NCGError."""


class NCGError(Exception):
    """Base class for domain errors (bad input, failed preconditions)."""


class ValidationError(NCGError):
    """An object failed its defining identities."""


class PreconditionError(NCGError):
    """An operation was called outside its domain."""


class NotPositiveError(NCGError):
    """A functional is not a positive state, or positivity could not be certified."""


class SplittingError(NCGError):
    """A semisimple algebra could not be decomposed over its scalar field."""


class TruncationError(NCGError):
    """A truncated computation did not stabilize or lost information."""


class CertificationError(NCGError):
    """A floating point certificate fell inside its safety margin."""
