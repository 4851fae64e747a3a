"""Error taxonomy shared by the library, service and CLI.

Library functions raise DomainError for misuse of a documented precondition,
RejectionError when an input fails a checked hypothesis of the theory (the
caller gets the failing stage by name), InvariantViolation when an internal
re-verification fails (a bug trap, never expected on conforming inputs), and
SizeGuardError / GenerationExhausted for oracle and generator refusals.
"""

from __future__ import annotations


class QuasitreeError(Exception):
    """Base class for all library errors."""


class DomainError(QuasitreeError, ValueError):
    """A documented precondition of an operation was violated by the caller."""


class RejectionError(QuasitreeError):
    """Input rejected by a named hypothesis check (CLI exit code 2)."""

    def __init__(self, stage: str, reason: str):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason


class InvariantViolation(QuasitreeError):
    """An internal verification failed (CLI exit code 3)."""


class SearchExhausted(InvariantViolation):
    """An improvement search ran out of moves or iterations unexpectedly."""


class SizeGuardError(DomainError):
    """An oracle refused an instance above its documented size guard."""


class GenerationExhausted(QuasitreeError):
    """The instance generator exceeded its attempt budget."""
