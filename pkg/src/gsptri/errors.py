"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: ``ValueError`` subclasses (bad arguments,
failed preconditions) exit 2, ``DataIntegrityError`` exits 3, and a failed
certificate exits 1 without raising.
"""


class PreconditionError(ValueError):
    """An operation was called on data that violates its stated precondition."""


class ResourceLimitError(ValueError):
    """A size bound (Weyl rank, matrix size) was exceeded."""


class DataIntegrityError(ValueError):
    """Structured input is self-inconsistent (e.g. a broken eigenvalue pairing)."""


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; signals a modeling bug, not bad input."""
