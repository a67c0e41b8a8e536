"""Regime-switching front end: one entry point with an error estimate.

The decision order is fixed: large-endpoint asymptotics when its leading
correction is already below target, the half-order closed form (once
self-validated against the oracle), the small-endpoint series, the
small-argument series, then the quadrature oracle as universal fallback.
Leading-term approximants are never substituted silently; they live in
expansions and must be called explicitly.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    DEFAULT_TOLERANCES,
    FLAG_CANCELLATION,
    DomainError,
    Evaluation,
    MethodTag,
    NonConvergence,
    ShuParams,
    Tolerances,
    validate,
)
from .expansions import asympt_large_t, series_small_t, series_small_z
from .gamma import _macdonald_k_eval
from .quadrature import shu_oracle

__all__ = [
    "RegimeThresholds",
    "RegimeDecision",
    "GridCell",
    "closed_form_half",
    "evaluate",
    "evaluate_grid",
]

_EPS = 2.220446049250313e-16
_EXP_FLOOR = -745.0
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class RegimeThresholds:
    """Switching boundaries; calibration defaults, overridable per call."""

    large_t_min: float = 30.0  # endpoint at which asymptotics are considered
    small_t_exponent: float = 2.0  # required z^2/(4t) for the small-t series
    small_z_max: float = 1.0  # largest argument for the small-z series


DEFAULT_THRESHOLDS = RegimeThresholds()


@dataclass(frozen=True)
class RegimeDecision:
    """The chosen path, a short reason code, and rejected candidates."""

    chosen: MethodTag
    reason: str
    candidates_tried: tuple = ()


@dataclass(frozen=True)
class GridCell:
    """One point of a grid sweep; either an evaluation or an error marker."""

    order: float
    argument: float
    endpoint: float
    evaluation: Evaluation | None
    decision: RegimeDecision | None
    error: str | None = None


def _erfcx(x: float) -> float:
    """Scaled complementary error function e^(x^2) erfc(x) for x >= 0."""
    if x < 2.5:
        return math.exp(x * x) * math.erfc(x)
    # Laplace continued fraction, modified Lentz; ~20 terms at x = 2.5
    tiny = 1e-300
    b = x
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    n = 0.0
    for _ in range(200):
        n += 0.5
        d = n * d + b
        if d == 0.0:
            d = tiny
        c = b + n / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= _EPS:
            break
    return h / _SQRT_PI


def closed_form_half(p: ShuParams) -> float:
    """Closed form for order +-1/2 in terms of erfc.

    Scaled-erfc evaluation keeps both terms alive when the plain product
    e^z erfc(z/(2 sqrt t) + sqrt t) would underflow.
    """
    nu, z, t = p.order, p.argument, p.endpoint
    if abs(nu) != 0.5:
        raise ValueError(f"closed form only holds at order +-1/2, got {nu}")
    st = math.sqrt(t)
    xm = 0.5 * z / st - st
    xp = 0.5 * z / st + st
    e_shared = -0.25 * z * z / t - t  # equals -z - xm^2 and +z - xp^2
    shared = math.exp(e_shared) if e_shared > _EXP_FLOOR else 0.0
    term_m = shared * _erfcx(xm) if xm >= 0.0 else math.exp(-z) * math.erfc(xm)
    term_p = shared * _erfcx(xp)
    if nu > 0.0:
        return 0.5 * math.sqrt(0.5 * z) * (_SQRT_PI / z) * (term_m + term_p)
    return 0.5 * math.sqrt(2.0 / z) * (0.5 * _SQRT_PI) * (term_m - term_p)


@lru_cache(maxsize=1)
def _closed_form_half_validated() -> bool:
    """One-time gate: the closed form is implementer-derived, so it is only
    trusted after agreeing with the quadrature oracle on a small grid."""
    tol = Tolerances(abs_tol=5e-324, rel_tol=1e-12, max_depth=120)
    for nu in (0.5, -0.5):
        for z, t in ((0.7, 0.4), (2.0, 1.0), (3.0, 3.0), (5.0, 4.0)):
            want = shu_oracle(ShuParams(nu, z, t), tol).value
            got = closed_form_half(ShuParams(nu, z, t))
            if abs(got - want) > 1e-9 * abs(want):
                return False
    return True


def evaluate(
    p: ShuParams,
    tol: Tolerances = None,
    thresholds: RegimeThresholds = None,
) -> tuple[Evaluation, RegimeDecision]:
    """Evaluate S with the regime-switching decision procedure.

    Returns the evaluation together with the decision record (chosen
    method, reason code, and any candidates tried and rejected).  The
    procedure is deterministic and never returns a leading-term
    approximant.
    """
    tol = tol or DEFAULT_TOLERANCES
    th = thresholds or DEFAULT_THRESHOLDS
    nu, z, t = p.order, p.argument, p.endpoint
    tried = []

    if t >= th.large_t_min:
        e = nu * math.log(0.5 * z) - math.log(2.0) - t - (nu + 1.0) * math.log(t)
        corr0 = math.exp(e) if e > _EXP_FLOOR else 0.0
        kval, _, _ = _macdonald_k_eval(nu, z)
        if corr0 < tol.target(kval):
            ev = asympt_large_t(p, tol)
            return ev, RegimeDecision(MethodTag.ASYMPT_LARGE_T, "LARGE_T", tuple(tried))
        tried.append((MethodTag.ASYMPT_LARGE_T, "CORRECTION_TOO_LARGE"))

    if abs(nu) == 0.5:
        if _closed_form_half_validated():
            v = closed_form_half(p)
            ev = Evaluation(v, 8.0 * _EPS * abs(v), MethodTag.CLOSED_FORM_HALF, 1)
            return ev, RegimeDecision(
                MethodTag.CLOSED_FORM_HALF, "HALF_ORDER_CLOSED_FORM", tuple(tried)
            )
        tried.append((MethodTag.CLOSED_FORM_HALF, "VALIDATION_FAILED"))

    if 0.25 * z * z / t >= th.small_t_exponent:
        rejection = None
        try:
            ev = series_small_t(p, tol)
        except NonConvergence:
            rejection = "NON_CONVERGENCE"
        else:
            if FLAG_CANCELLATION in ev.flags:
                rejection = "CANCELLATION"
            elif ev.error_estimate > tol.target(ev.value):
                rejection = "TAIL_TOO_LARGE"
            else:
                return ev, RegimeDecision(
                    MethodTag.SERIES_SMALL_T, "SMALL_T_CONVERGED", tuple(tried)
                )
        tried.append((MethodTag.SERIES_SMALL_T, rejection))

    if z <= th.small_z_max:
        rejection = None
        try:
            ev = series_small_z(p, tol)
        except NonConvergence:
            rejection = "NON_CONVERGENCE"
        else:
            if FLAG_CANCELLATION in ev.flags:
                rejection = "CANCELLATION"
            elif ev.error_estimate > tol.target(ev.value):
                rejection = "TAIL_TOO_LARGE"
            else:
                return ev, RegimeDecision(
                    MethodTag.SERIES_SMALL_Z, "SMALL_Z_CONVERGED", tuple(tried)
                )
        tried.append((MethodTag.SERIES_SMALL_Z, rejection))

    ev = shu_oracle(p, tol)
    return ev, RegimeDecision(MethodTag.ORACLE5, "FALLBACK_ORACLE", tuple(tried))


def evaluate_grid(orders, zs, ts, tol=None, thresholds=None) -> list:
    """Row-major sweep over the Cartesian product of the three lists.

    Cells are independent (identical to pointwise evaluate); a failed cell
    carries an error marker and never aborts the sweep.
    """
    cells = []
    for nu in orders:
        for z in zs:
            for t in ts:
                try:
                    p = validate(nu, z, t)
                    ev, dec = evaluate(p, tol, thresholds)
                except (DomainError, NonConvergence, OverflowError) as exc:
                    cells.append(
                        GridCell(nu, z, t, None, None, f"{type(exc).__name__}: {exc}")
                    )
                else:
                    cells.append(GridCell(nu, z, t, ev, dec))
    return cells
