"""Exception types raised by snc-lab.

Each error also derives from the closest builtin so that code catching
``ValueError`` or ``RuntimeError`` keeps working.
"""

from typing import Optional


class SNCLabError(Exception):
    """Base class for every error raised by snc-lab."""


class DimensionError(SNCLabError, ValueError):
    """Two relations, or a relation and a vector, disagree on the vertex count."""


class VertexOutOfRangeError(SNCLabError, IndexError):
    """A vertex id is not in ``0..n-1``."""


class PreconditionError(SNCLabError, ValueError):
    """An operation was called on an input that violates its hypothesis."""


class DocumentError(SNCLabError, ValueError):
    """A pair document could not be parsed.

    The message always starts with a position: ``line L, column C`` for JSON
    syntax errors, or a JSON path such as ``a[3][1]`` for structural ones.
    """

    def __init__(self, position: str, message: str):
        self.position = position
        super().__init__(f"{position}: {message}")


class DensityNotFoundError(SNCLabError, RuntimeError):
    """The losing density system turned out infeasible (density-not-found)."""


class TheoremViolatedError(SNCLabError, RuntimeError):
    """A step of the tournament-pair theorem failed on a concrete instance.

    ``instance`` holds the offending pair as a pair document dict so that it
    can be written to disk and re-checked independently.
    """

    def __init__(self, message: str, instance: Optional[dict] = None):
        self.instance = instance
        super().__init__(f"theorem-violated: {message}")
