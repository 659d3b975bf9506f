"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad vertex, duplicate, precondition)."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured budget."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class ConstructionError(RuntimeError):
    """A constructed set failed its internal verification."""
