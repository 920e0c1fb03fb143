"""
Exception hierarchy shared by every flagrep module.
"""

from typing import Any, Dict, List, Optional


class FlagrepError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = dict(context or {})

    def to_dict(self) -> Dict[str, Any]:
        """Serializable view used by the CLI error report."""
        return {
            'error': type(self).__name__,
            'message': self.message,
            'context': self.context,
        }


# arith
class NonDivisible(FlagrepError):
    """The divisor does not divide the dividend."""


class NotPrime(FlagrepError):
    """A value required to be prime (or a prime power) is not."""


# groups
class IllegalId(FlagrepError):
    """Group parameters are outside the legal range of the family."""


class Unsupported(FlagrepError):
    """The requested datum is not in the built-in tables."""


# feasibility
class MalformedRow(FlagrepError):
    """An elimination row is internally inconsistent."""


class MismatchDetected(FlagrepError):
    """Recomputed values disagree with a printed table."""

    def __init__(self, message: str, rows: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message, {'rows': rows or []})
        self.rows = rows or []


# permgroup
class PointOutOfRange(FlagrepError):
    pass


class DegreeTooLarge(FlagrepError):
    pass


class NotTransitive(FlagrepError):
    pass


class BadPermutation(FlagrepError):
    pass


# geometry
class FieldTooLarge(FlagrepError):
    pass


class DivisionByZero(FlagrepError):
    pass


class BadDimension(FlagrepError):
    pass


class NotCharacteristicTwo(FlagrepError):
    pass


class SingularMatrix(FlagrepError):
    pass


class NotClosed(FlagrepError):
    pass


# designs
class NotADesign(FlagrepError):
    """Block sizes, pair counts or replication numbers are not constant."""


class NotAnAutomorphismGroup(FlagrepError):
    """Some generator maps a block outside the block set."""


# io
class FormatError(FlagrepError):
    """A file or flag value could not be parsed."""


class InvalidConfig(FlagrepError):
    """The configuration file holds a value outside its allowed range."""
