"""Shared exception types for the engine.

Every error raised on purpose by the library derives from EngineError so
callers (and the command line front end) can catch one base class and
emit a structured error record.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all deliberate engine errors."""

    code = "engine"


class IndeterminateSign(EngineError):
    """A numeric frequency value fell inside the sign guard band."""

    code = "indeterminate-sign"


class DivisionByZero(EngineError):
    code = "division-by-zero"


class NumericOverflow(EngineError):
    """Numeric evaluation of a scalar hit a vanishing denominator."""

    code = "numeric-overflow"


class AxisMismatch(EngineError):
    """A coefficient axis received an index of the wrong kind."""

    code = "axis-mismatch"


class EmptyElement(EngineError):
    code = "empty-element"


class IllegalFlip(EngineError):
    """A generator-exchanging map was used as if it were a homomorphism."""

    code = "illegal-flip"


class InvalidScale(EngineError):
    code = "invalid-scale"


class NotInDomain(EngineError):
    """Character evaluation outside the character's domain algebra."""

    code = "not-in-domain"


class NotAnalytic(EngineError):
    """An operation restricted to nonnegative-frequency elements saw a
    negative frequency or a non-multiplication factor."""

    code = "not-analytic"


class NotInAmbient(EngineError):
    """Ideal membership was asked for an element outside the ambient algebra."""

    code = "not-in-ambient"


class DegeneratePhase(EngineError):
    code = "degenerate-phase"


class BasisTooShort(EngineError):
    """A summation order too small to span the support of the element."""

    code = "basis-too-short"


class NonIntegerLattice(EngineError):
    """A support coordinate that misses the factorial summation lattice.

    Raised only in strict mode; the default section behaviour drops the
    offending term, matching the definition of the weighted sum.
    """

    code = "non-integer-lattice"


class NotFound(EngineError):
    code = "not-found"


class ScheduleTooShort(EngineError):
    code = "schedule-too-short"


class DivergentPacket(EngineError):
    """A Gaussian overlap integral with nonpositive real quadratic part."""

    code = "divergent-packet"


class GroupModeError(EngineError):
    """A dilation index outside the configured dilation group."""

    code = "group-mode"


class ParseError(EngineError):
    """Bad expression text. Carries the offending span when known."""

    code = "parse"

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span


class AtomCollisionWarning(UserWarning):
    """Two declared atom values are close to rationally dependent."""


class UntrustedCharacterWarning(UserWarning):
    """Evaluation of a character whose continuity is not established."""
