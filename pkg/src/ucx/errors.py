"""Exception types raised across the package."""


class UcxError(Exception):
    """Base class for all package errors."""


class ShapeError(UcxError, ValueError):
    """Operands have incompatible dimensions or qubit counts."""


class ValidationError(UcxError, ValueError):
    """An input violates a documented precondition."""


class DecodeError(UcxError, ValueError):
    """A bit string is not (or does not begin with) a valid codeword or program."""


class ConfigurationError(UcxError, ValueError):
    """A budget or machine configuration cannot support the requested computation."""


class ConsistencyError(UcxError, RuntimeError):
    """A numerical result left the range guaranteed by exact arithmetic."""
