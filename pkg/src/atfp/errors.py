"""Exception hierarchy shared across the package.

Grouping mirrors the CLI exit-code contract: parse errors exit 2,
precondition failures exit 3, internal invariant violations exit 4.
"""


class AtfpError(Exception):
    """Base class for all package errors."""


class ParseError(AtfpError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class ValidationError(AtfpError):
    """Malformed instance data (exit code 2)."""


class DuplicatePairError(ValidationError):
    pass


class DegeneratePairError(ValidationError):
    pass


class OutOfRangeError(ValidationError):
    pass


class PreconditionError(AtfpError):
    """Caller violated an operation's precondition (exit code 3)."""


class NotATFreeError(PreconditionError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"graph contains the asteroidal triple {triple}")


class DisconnectedError(PreconditionError):
    pass


class NotATreeError(PreconditionError):
    pass


class NotACycleError(PreconditionError):
    pass


class SameComponentError(PreconditionError):
    pass


class TooLargeError(PreconditionError):
    pass


class BudgetExceededError(PreconditionError):
    pass


class GenerationFailedError(PreconditionError):
    pass


class PreconditionViolatedError(PreconditionError):
    pass


class InternalInvariantError(AtfpError):
    """A structural guarantee failed; signals a bug or an invalid input that
    slipped past recognition (exit code 4)."""


class NotUnionOfPathsError(InternalInvariantError):
    pass


class NoCoverError(InternalInvariantError):
    pass
