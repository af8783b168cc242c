class ExclcsError(Exception):
    """Base class for all errors raised by this package."""


class EmptyConstraint(ExclcsError, ValueError):
    """A constraint pattern of length zero was supplied.

    The empty string occurs in every string, so no candidate (not even the
    empty subsequence) could exclude it.
    """


class InstanceTooLarge(ExclcsError, ValueError):
    pass


class InstanceError(ExclcsError, ValueError):
    """Malformed instance input (bad pattern file, oversized sequence)."""


class InconsistentTable(ExclcsError, RuntimeError):
    """Backtrace found a table entry that no predecessor explains."""
