"""Exception hierarchy shared by the library and the command line."""


class CredtestError(Exception):
    """Base class for all errors raised by credtest."""


class DomainError(CredtestError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedShapeError(DomainError):
    """The posterior's shape class is not handled by the requested construction."""


class DataError(CredtestError, ValueError):
    """Observed data violate the support of the sampling model, or are empty."""
