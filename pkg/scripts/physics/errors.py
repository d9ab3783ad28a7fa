"""
Error Types
Exceptions raised by the engine, grouped so the CLI can map them to exit codes
"""


class OttoEngineError(Exception):
    """Base class for every error raised by this project"""


class ValidationError(OttoEngineError, ValueError):
    """Invalid parameters, states, grids or configuration"""


class DomainError(ValidationError):
    """Input outside the mathematical domain of an operation"""


class IntegratorError(OttoEngineError):
    """Time-stepping oracle went unstable"""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class QuadratureError(OttoEngineError):
    """Adaptive quadrature did not reach its tolerance"""


class ThermodynamicsError(OttoEngineError):
    """An energy-balance or second-law invariant failed at assembly"""


class ConfigError(ValidationError):
    """Unreadable config file, unknown key or malformed value"""
