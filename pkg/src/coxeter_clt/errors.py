"""Exception hierarchy shared by the whole package."""


class CoxeterError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CoxeterError, ValueError):
    """A group or spec string does not follow the grammar."""


class ParameterOutOfRange(CoxeterError, ValueError):
    """A family/parameter combination outside the classification."""


class GroupMismatch(CoxeterError, ValueError):
    """Elements from groups with different factor shapes were combined."""


class OrderExceedsCap(CoxeterError):
    """Group order exceeds the enumeration cap."""

    def __init__(self, message, order=None, cap=None, factor=None):
        super().__init__(message)
        self.order = order
        self.cap = cap
        self.factor = factor


class TableMissing(CoxeterError):
    """An exceptional factor has no prebuilt element table."""


class ZeroVariance(CoxeterError, ValueError):
    """Standardization of a point mass."""


class ConstraintViolated(CoxeterError, ValueError):
    """Moment or coefficient preconditions of the Mallows sum check failed."""


class PreconditionViolated(CoxeterError, ValueError):
    """Admissibility condition of a characteristic-function bound failed."""


class ModulusExceedsOne(CoxeterError, ValueError):
    """A complex number outside the closed unit disk was supplied."""
