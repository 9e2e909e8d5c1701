"""
Error taxonomy for chromatic-forge.

Validation errors subclass ``ValueError`` and runtime failures subclass
``RuntimeError`` so callers can keep catching the builtin types.
The CLI maps each class to a fixed exit status.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple


class ChromaticForgeError(Exception):
    """Base class for every error raised by chromatic-forge."""

    exit_code: int = 1


class GraphValidationError(ChromaticForgeError, ValueError):
    """A graph argument violates an operation's precondition."""


class GroupValidationError(ChromaticForgeError, ValueError):
    """A permutation, group or partition is malformed or not an automorphism."""


class PolynomialError(ChromaticForgeError, ValueError):
    """A polynomial argument is unusable (e.g. the zero polynomial for root isolation)."""


class ParseError(ChromaticForgeError, ValueError):
    """Input could not be parsed as Graph JSON, group JSON or family shorthand."""

    exit_code = 64


class ResourceLimitError(ChromaticForgeError, RuntimeError):
    """A configured size cap was exceeded. Results are never silently truncated."""

    exit_code = 65

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what}: size {size} exceeds configured limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class PremiseError(ChromaticForgeError, ValueError):
    """The forge hypotheses do not hold for the given input."""

    exit_code = 2


class ExhaustionError(ChromaticForgeError, RuntimeError):
    """No s up to s_max made the orbital polynomial negative at x0."""

    exit_code = 3

    def __init__(self, s_max: int, trajectory: List[Tuple[int, Fraction]]) -> None:
        super().__init__(f"orbital value stayed non-negative for every s <= {s_max}")
        self.s_max = s_max
        self.trajectory = trajectory


class ConsistencyError(ChromaticForgeError, RuntimeError):
    """Two independent computations disagree, or a proven bound was contradicted."""

    exit_code = 70
