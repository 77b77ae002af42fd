"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors exit 1, DomainError
(violated preconditions) exits 2, NumericError exits 3.
"""


class DomainError(ValueError):
    """A precondition on the requested computation is violated."""


class BoundaryError(DomainError):
    """A walk path leaves the strand range of its geometry."""


class IrreducibleWordError(DomainError):
    """A braid word the trace rewrite system cannot bring to canonical form."""

    def __init__(self, message: str, word=None):
        super().__init__(message)
        self.word = word


class NumericError(RuntimeError):
    """A numerical procedure failed to converge or lost too much precision."""
