"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    pass


class NotFoundError(LookupError):
    pass


class ResourceError(RuntimeError):
    """Requested object would exceed a configured size cap."""


class NumericError(ArithmeticError):
    pass


class DegradedResultError(NumericError):
    """Analytic construction could not be completed; ``diagnostics`` says why."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class ConfigError(ValueError):
    """Bad run configuration. ``key`` names the offending entry, if any."""

    def __init__(self, message, key=None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key
