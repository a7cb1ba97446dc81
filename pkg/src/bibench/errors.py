"""Shared exception types.

Everything user-facing raises a DomainError subclass so the CLI can map
bad input to exit status 1 without pattern-matching on messages.
"""


class DomainError(ValueError):
    """Invalid input: bad parameter, malformed descriptor, or cap overflow."""


class ValidationError(DomainError):
    """A problem instance violates one of its family's parameter constraints."""


class DescriptorError(DomainError):
    """An instance descriptor string cannot be parsed."""


class EnumerationCapError(DomainError):
    """An exhaustive operation was requested above the enumeration cap."""
