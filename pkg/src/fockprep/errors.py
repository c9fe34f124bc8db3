"""Exception hierarchy.

Everything raised on purpose by this package derives from FockPrepError.
ValidationError covers bad inputs (states, gates, files, arguments);
Diverged signals that a synthesized circuit failed its own verification,
which means a bug or a numerically hostile input, never a user mistake.
"""


class FockPrepError(Exception):
    """Base class for all errors raised by fockprep."""


class ValidationError(FockPrepError):
    """Invalid input data or arguments."""


class WrongWeight(ValidationError):
    """A configuration's Hamming weight does not match the electron count."""


class Duplicate(ValidationError):
    """The same configuration appears twice in a term list."""


class NotNormalized(ValidationError):
    """Squared amplitudes do not sum to 1 within tolerance."""


class Empty(ValidationError):
    """A state with no terms (or all terms below threshold)."""


class MixedWeight(ValidationError):
    """Terms of differing Hamming weight in a single fixed-particle state."""


class OrbitalOutOfRange(ValidationError):
    """Ladder operator orbital index outside 1..n."""


class ZeroVector(ValidationError):
    """Cannot build a reflection for the zero vector."""


class SupportTooLarge(ValidationError):
    """Requested support size exceeds the number of available configurations."""


class InvalidArgs(ValidationError):
    """Arguments violate a precondition (ranges, parity, missing values)."""


class Unsupported(ValidationError):
    """A closed form or feature that is deliberately not provided."""


class FormatError(ValidationError):
    """Malformed state or circuit file; message names the offending line or field."""


class DimensionMismatch(FockPrepError):
    """Qubit counts of two objects disagree."""


class TooManyQubitsDense(FockPrepError):
    """Dense simulation requested above the dense qubit cap."""


class Diverged(FockPrepError):
    """A synthesized circuit failed the post-synthesis verification check."""
