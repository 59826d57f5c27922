"""Exception types shared by all trihex modules."""


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class ResourceError(RuntimeError):
    """Raised when a computation would exceed a configured resource cap."""
