"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds the configured enumeration cap."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed; signals a convention bug."""
