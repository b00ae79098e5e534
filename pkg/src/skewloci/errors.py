"""Shared exception types.

The command line driver maps these onto exit codes: PreconditionError and its
subclasses mean the input violated a mathematical precondition (exit 3), while
InconsistencyError means an internal cross-check failed and the computation
cannot be trusted (exit 4).
"""


class PreconditionError(ValueError):
    """A documented mathematical precondition does not hold for the input."""


class DegenerateInputError(PreconditionError):
    """Structurally degenerate input that is reported as a distinct condition."""


class UnsupportedFieldError(PreconditionError):
    """The operation is not available over the requested field."""


class InconsistencyError(RuntimeError):
    """An internal invariant failed; the result would be unreliable."""
