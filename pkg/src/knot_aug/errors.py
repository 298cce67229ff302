"""Exception hierarchy shared by every module."""


class KnotAugError(Exception):
    """Base class for all library errors."""


class UsageError(KnotAugError, ValueError):
    """Operands from different rings, missing images, bad arguments."""


class ParseError(UsageError):
    """Malformed braid word or numeric literal."""


class DomainError(KnotAugError, ValueError):
    """Input outside the mathematical domain of an operation."""


class StructureError(KnotAugError):
    """An element does not have the shape an extraction relies on."""


class VerificationError(KnotAugError):
    """A claimed exact identity failed; carries the nonzero difference."""

    def __init__(self, message, difference=None):
        super().__init__(message)
        self.difference = difference


class ResourceError(KnotAugError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
