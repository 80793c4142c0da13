"""
Error hierarchy for the lab.

ValidationError subclasses describe bad input (CLI exit code 2);
ComputationError subclasses describe runtime failures (CLI exit code 3).
"""

from typing import Any, Optional


class LabError(Exception):
    """Base class for every error raised by the lab"""


class ValidationError(LabError):
    """Input rejected before or during validation"""


class ComputationError(LabError):
    """A computation could not finish or broke an identity"""


class NegativeWeight(ValidationError):
    def __init__(self, s: int, t: int, w: float):
        super().__init__(f"negative weight {w} on edge ({s}, {t})")
        self.s, self.t, self.w = s, t, w


class IndexOutOfRange(ValidationError):
    def __init__(self, index: int, n: int):
        super().__init__(f"vertex index {index} outside [0, {n})")
        self.index, self.n = index, n


class IsolatedVertex(ValidationError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has zero degree")
        self.vertex = vertex


class EmptyGraph(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class BadParameter(ValidationError):
    pass


class NotBipartite(ValidationError):
    pass


class GapTooLarge(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class NTooLarge(ValidationError):
    def __init__(self, n_requested: int, available: int):
        super().__init__(f"requested {n_requested} relators but only {available} exist")
        self.n_requested, self.available = n_requested, available


class EmptyLink(ValidationError):
    pass


class UnknownVertex(ValidationError):
    def __init__(self, vertex: Any):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex


class NotEquivariant(ValidationError):
    pass


class InvalidDescriptor(ValidationError):
    pass


class UsageError(ValidationError):
    def __init__(self, message: str, help_text: str = ""):
        super().__init__(message)
        self.help_text = help_text


class ParseError(ValidationError):
    def __init__(self, message: str, line_number: Optional[int] = None, path: Optional[str] = None):
        where = f"{path or '<input>'}:{line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{message}")
        self.line_number = line_number
        self.path = path


class MaxIterExceeded(ComputationError):
    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class DisconnectedLink(ComputationError):
    def __init__(self, vertex: int):
        super().__init__(f"link of vertex {vertex} is disconnected")
        self.vertex = vertex


class IdentityViolation(ComputationError):
    pass
