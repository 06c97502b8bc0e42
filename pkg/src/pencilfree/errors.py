"""Exception types shared across the package and the exit codes they map to."""

from __future__ import annotations


class ValidationError(ValueError):
    """Input rejected before any theorem bookkeeping; carries a stable ``code``."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class NotReducedError(ValidationError):
    def __init__(self, message: str = ""):
        super().__init__("NOT_REDUCED", message)


class IdentityViolated(RuntimeError):
    """Two independent computations of the same quantity disagree.

    This signals a bug (or a hypothesis silently not met), never a property
    of the input, so callers should not catch it to continue.
    """

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        super().__init__(f"{identity}: {detail}" if detail else identity)


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_INCONSISTENT = 4
