"""Exception types shared across the package."""


class NecklaceError(Exception):
    """Base class for all package errors."""


class DivisionByZero(NecklaceError, ZeroDivisionError):
    pass


class SizeBudgetExceeded(NecklaceError):
    pass


class SpectrumNotResolved(NecklaceError):
    """Characteristic polynomial did not split over the candidate set.

    The unresolved residual polynomial is attached as `residual`.
    """

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class NotDiagonalizable(NecklaceError):
    pass


class CapExceeded(NecklaceError):
    def __init__(self, msg, partial_count=None):
        super().__init__(msg)
        self.partial_count = partial_count


class NonCyclotomicEntries(NecklaceError):
    pass


class ParameterDegenerate(NecklaceError):
    pass


class RestrictionViolated(NecklaceError):
    pass


class AlphabetMismatch(NecklaceError):
    pass


class TagMismatch(NecklaceError):
    pass


class CorruptCheckpoint(NecklaceError):
    pass


class ConfigParseError(NecklaceError):
    pass


class ScalarParseError(ConfigParseError):
    """Bad scalar-string syntax (shared grammar of CLI and JSON reports)."""
