"""Exception types shared by every module in the package.

The CLI maps these onto process exit codes; see :mod:`musum.cli`.
"""


class SpecParseError(ValueError):
    """A prime-set description string does not match the grammar.

    ``position`` is the 0-based offset of the offending character in the
    input text.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UsageError(ValueError):
    """An operation was invoked with an unsupported mode or backend."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class VerificationError(AssertionError):
    """A checked inequality or identity was falsified.

    This should never be raised by a correct implementation: the bounds it
    guards are theorems.  It exists so that a falsifying instance is loud,
    serializable and replayable instead of a silent wrong answer.
    """

    def __init__(self, message: str, instance: dict | None = None):
        super().__init__(message)
        self.instance = instance or {}


class ResourceError(RuntimeError):
    """A request exceeds a configured memory or size ceiling."""
