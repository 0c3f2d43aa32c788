from __future__ import annotations

from typing import Sequence


class TauWorkbenchError(Exception):
    """Base class for every error raised by the workbench."""

    exit_code = 1


class InvalidInputError(TauWorkbenchError, ValueError):
    exit_code = 2


class InvalidQuiverError(InvalidInputError):
    pass


class InvalidRelationError(InvalidInputError):
    pass


class InvalidPartitionError(InvalidInputError):
    pass


class QuiverFormatError(InvalidInputError):
    def __init__(self, message: str, line_no: int | None = None) -> None:
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class NonConvexError(InvalidInputError):
    """A vertex set is not path closed; ``path`` leaves the set."""

    def __init__(self, path: Sequence[str], vertices: Sequence[int]) -> None:
        super().__init__(
            "vertex set is not convex: path %s passes through %s"
            % (".".join(path), ",".join(str(v) for v in vertices))
        )
        self.path = tuple(path)
        self.vertices = tuple(vertices)


class NotDescentDirectionError(InvalidInputError):
    pass


class InconclusiveError(TauWorkbenchError):
    exit_code = 3


class CapExceededError(InconclusiveError):
    def __init__(self, cap: int, visited: int) -> None:
        super().__init__(f"inconclusive: cap ({visited} nodes reached, cap {cap})")
        self.cap = cap
        self.visited = visited


class SearchTooLargeError(InconclusiveError):
    pass


class CertificationError(TauWorkbenchError):
    exit_code = 4


class DecompositionUncertifiedError(CertificationError):
    pass
