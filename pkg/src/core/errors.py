"""Exception hierarchy shared by every hodgeseq component.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Optional


class HodgeSeqError(Exception):
    """Base error carrying the component that raised it and an exit code."""

    exit_code: int = 1
    default_component: str = "hodgeseq"

    def __init__(self, message: str, component: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.component = component or self.default_component

    def diagnostic(self) -> str:
        return f"{self.component}: {self.message}"


class InputError(HodgeSeqError, ValueError):
    """Malformed or out-of-range user input."""

    exit_code = 2


class SizeError(InputError):
    """A cell budget or the dense eigensolver limit would be exceeded."""

    def __init__(self, message: str, count: int, component: Optional[str] = None):
        super().__init__(message, component)
        self.count = count


class TruncationError(InputError):
    """The requested operator needs cells above the stored top dimension."""


class PositivityError(InputError):
    """A weight or probability that must be strictly positive is not."""


class DegenerateSliceError(InputError):
    """A dimension slice carries zero total probability mass."""


class NormalizationError(InputError):
    """Normalizing by the empty-cell probability is impossible."""


class ModelError(InputError):
    """Vertex weights violate the independent vertices model constraints."""


class PreconditionError(InputError):
    """A verification routine was called outside its hypotheses."""


class NumericalError(HodgeSeqError):
    """A numerical routine produced an unusable result."""

    exit_code = 1


class VerificationFailed(HodgeSeqError):
    """A verification report contains at least one failed check."""

    exit_code = 1
