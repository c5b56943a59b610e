"""Exception types shared across the toolkit."""


class ParameterError(ValueError):
    """Raised when an operation is called with infeasible or invalid parameters."""


class FormatError(ValueError):
    """Raised when a file or byte stream does not match an expected format."""
