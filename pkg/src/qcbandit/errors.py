"""Exception types shared across the package."""


class QcbError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(QcbError, ValueError):
    """Operands act on different qubit counts."""


class ConfigurationError(QcbError, ValueError):
    """Invalid user-supplied parameters (qubit counts, ranges, schedules)."""


class CapabilityError(QcbError, ValueError):
    """Request exceeds what an operation supports (e.g. dense oracle size)."""


class InvariantError(QcbError, RuntimeError):
    """An internal consistency condition was violated."""


class NumericalError(QcbError, ArithmeticError):
    """A numerical computation produced non-finite or unusable values."""
