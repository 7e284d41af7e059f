"""Exception hierarchy."""

from __future__ import annotations


class SquarewatchError(Exception):
    """Base class for all package errors."""


class GraphInputError(SquarewatchError, ValueError):
    """Invalid graph, vertex id, or constructor parameter."""


class Graph6ParseError(GraphInputError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class RetryExhaustedError(SquarewatchError):
    def __init__(self, attempts: int) -> None:
        super().__init__(f"no simple pairing found after {attempts} attempts")
        self.attempts = attempts


class StructureError(SquarewatchError):
    """A structural invariant the theory guarantees did not hold.

    Raised for broken preconditions (irregular input, small degree) or
    implementation bugs; ``witness`` carries the offending vertex ids.
    """

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness
