"""Domain types, parameter validation, and shared numeric policy.

Everything in this package evaluates functions of the triple
(order, argument, endpoint) with a strictly positive real argument and
endpoint.  The types here carry evaluation points, accuracy targets, and
results between the quadrature, series, and identity-checking modules.
"""

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "DomainError",
    "PoleError",
    "NonConvergence",
    "StepTooCoarse",
    "NearPoleWarning",
    "FLAG_UNDERFLOW",
    "FLAG_CANCELLATION",
    "MethodTag",
    "ShuParams",
    "Tolerances",
    "Evaluation",
    "DEFAULT_TOLERANCES",
    "validate",
    "sgn",
]


class DomainError(ValueError):
    """A parameter lies outside the real domain (argument > 0, endpoint > 0, all finite)."""

    def __init__(self, field: str, value, reason: str):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r}: {reason}")


class PoleError(ValueError):
    """The gamma function was requested at one of its poles (0, -1, -2, ...)."""


class NonConvergence(ArithmeticError):
    """An iterative evaluation did not reach its tolerance within its caps.

    Carries the partial result and its error estimate at the point of failure,
    when they are meaningful.
    """

    def __init__(self, message: str, partial=None, error_estimate=None):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class StepTooCoarse(ArithmeticError):
    """A finite-difference stencil failed its step-halving consistency check."""


class NearPoleWarning(UserWarning):
    """A large-argument approximant was evaluated close to its z = 2t pole."""


# Flags carried on Evaluation.flags.
FLAG_UNDERFLOW = "underflow_to_zero"
FLAG_CANCELLATION = "severe_cancellation"


class MethodTag(Enum):
    """Which evaluation path produced a value."""

    ORACLE2 = "Oracle2"
    ORACLE4 = "Oracle4"
    ORACLE5 = "Oracle5"
    SERIES_SMALL_T = "SeriesSmallT"
    SERIES_SMALL_Z = "SeriesSmallZ"
    ASYMPT_LARGE_T = "AsymptLargeT"
    LEADING_SMALL_T = "LeadingSmallT"
    LEADING_SMALL_Z = "LeadingSmallZ"
    LEADING_LARGE_T = "LeadingLargeT"
    LEADING_LARGE_Z = "LeadingLargeZ"
    CLOSED_FORM_HALF = "ClosedFormHalf"


def _as_finite_real(field: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(field, value, "must be a real number")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(field, value, "must be finite")
    return value


@dataclass(frozen=True)
class ShuParams:
    """An evaluation point: real order, argument z > 0, endpoint t > 0."""

    order: float
    argument: float
    endpoint: float

    def __post_init__(self):
        object.__setattr__(self, "order", _as_finite_real("order", self.order))
        for name in ("argument", "endpoint"):
            value = _as_finite_real(name, getattr(self, name))
            if value <= 0.0:
                raise DomainError(name, value, "must be strictly positive")
            object.__setattr__(self, name, value)


def validate(order, argument, endpoint) -> ShuParams:
    """Check (order, argument, endpoint) and return the validated point.

    Raises DomainError naming the offending field when the argument or
    endpoint is not strictly positive, or when any input is non-finite.
    """
    return ShuParams(order, argument, endpoint)


@dataclass(frozen=True)
class Tolerances:
    """Accuracy targets and work caps shared by all iterative evaluators.

    abs_tol and rel_tol are combined as max(abs_tol, rel_tol * |value|);
    max_terms caps series length, max_depth caps quadrature bisections.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_terms: int = 200
    max_depth: int = 60

    def __post_init__(self):
        if self.abs_tol < 0.0 or self.rel_tol < 0.0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0.0 and self.rel_tol == 0.0:
            raise ValueError("at least one of abs_tol, rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")
        if self.max_depth < 1:
            raise ValueError("max_depth must be a positive integer")

    def target(self, scale: float) -> float:
        """Absolute convergence target for a quantity of magnitude |scale|."""
        return max(self.abs_tol, self.rel_tol * abs(scale))


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class Evaluation:
    """A computed value with an absolute error estimate and provenance.

    work counts quadrature subdivisions or series terms, whichever the
    method used.  flags may carry FLAG_UNDERFLOW (true value below the
    smallest normal double, 0.0 returned) or FLAG_CANCELLATION (the
    partial sums exceeded 1e6 times the final value).
    """

    value: float
    error_estimate: float
    method: MethodTag
    work: int
    flags: tuple = ()

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise ValueError("error_estimate must be nonnegative")
        if self.work < 0:
            raise ValueError("work must be nonnegative")


def sgn(y: float) -> int:
    """Signum: 1 for y > 0, 0 for y = 0, -1 for y < 0."""
    if math.isnan(y):
        raise DomainError("y", y, "sign of NaN is undefined")
    return (y > 0) - (y < 0)
