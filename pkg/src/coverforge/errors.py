"""Package-specific exception types."""

from __future__ import annotations


class GuardError(Exception):
    """Raised when a requested computation exceeds a configured size guard.

    The message names the offending dimension and the active limit so a
    caller (or the command line) can report exactly what to shrink.
    """
