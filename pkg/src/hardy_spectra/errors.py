"""Exception hierarchy shared across the package."""


class HardySpectraError(Exception):
    """Base class for all package errors."""


class SymbolError(HardySpectraError):
    """Structurally invalid symbol data (bad jumps, bad coefficients, ...)."""


class InvalidSelfMapError(SymbolError):
    """A purported analytic self-map of the disc fails the self-map check."""


class NumericalError(HardySpectraError):
    """A numerical routine failed to meet its declared tolerance.

    Carries a free-form ``diagnostics`` dict so callers can report what was
    achieved versus what was requested.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NotFredholmError(NumericalError):
    """Symbol curve passes within the safety margin of the origin."""


class ConfigurationError(HardySpectraError):
    """Inconsistent or incomplete run configuration."""
