"""Order-shift identities, derivatives, residual checks, and the related
incomplete functions (generalized incomplete gamma, leaky aquifer,
truncated cosh integral).

Each *_residual operation evaluates one identity left-minus-right at a
point, normalized by the largest additive term.  Anti-circularity policy:
the second recurrence and the finite-difference PDE mode use raw central
differences of the quadrature oracle, never the order-shift derivative
formula, so a sign error in that formula cannot certify itself.
"""

import math
from dataclasses import dataclass

from .core import DomainError, ShuParams, StepTooCoarse, Tolerances
from .quadrature import shu_oracle

__all__ = [
    "ResidualReport",
    "dS_dt",
    "dS_dz",
    "recurrence1_residual",
    "recurrence2_residual",
    "diff_relation1_residual",
    "diff_relation2_residual",
    "pde_residual",
    "gen_incomplete_gamma",
    "leaky_aquifer",
    "incomplete_modified_bessel",
]

_EXP_FLOOR = -745.0
_TINY = 2.2250738585072014e-308

# residual sweeps want oracle noise well under the identity tolerances
_TIGHT = Tolerances(abs_tol=5e-324, rel_tol=1e-12, max_depth=120)

# step-halving disagreement thresholds, relative to the residual scale
_FD_CHECK = {1: 1e-5, 2: 1e-3}


@dataclass(frozen=True)
class ResidualReport:
    """Left-minus-right of one identity at one point.

    scale is the largest-magnitude additive term, so relative_residual is
    meaningful even where the function values themselves are tiny.
    """

    identity: str
    point: ShuParams
    residual: float
    scale: float
    k: int | None = None
    mode: str | None = None

    def __post_init__(self):
        if not self.scale > 0.0:
            raise ValueError("scale must be strictly positive")

    @property
    def relative_residual(self) -> float:
        return abs(self.residual) / self.scale


def _S(nu: float, z: float, t: float, tol: Tolerances) -> float:
    return shu_oracle(ShuParams(nu, z, t), tol).value


def dS_dt(p: ShuParams) -> float:
    """Exact endpoint derivative (1/2)(z/2)^nu e^(-t - z^2/4t) / t^(nu+1).

    Fundamental-theorem derivative of the defining integral; no quadrature.
    Returns an exact 0.0 when the exponential underflows.
    """
    nu, z, t = p.order, p.argument, p.endpoint
    e = nu * math.log(0.5 * z) - math.log(2.0) - t - 0.25 * z * z / t - (nu + 1.0) * math.log(t)
    return math.exp(e) if e > _EXP_FLOOR else 0.0


def _d2S_dt2(p: ShuParams) -> float:
    nu, z, t = p.order, p.argument, p.endpoint
    return dS_dt(p) * (-1.0 + 0.25 * z * z / (t * t) - (nu + 1.0) / t)


def dS_dz(p: ShuParams, tol: Tolerances = None) -> float:
    """Argument derivative through the order-shift formula
    (nu/z) S_nu - S_(nu+1), both terms from the quadrature oracle."""
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    return (nu / z) * _S(nu, z, t, tol) - _S(nu + 1.0, z, t, tol)


def _scale(*terms: float) -> float:
    return max(max(abs(x) for x in terms), _TINY)


def recurrence1_residual(p: ShuParams, tol: Tolerances = None) -> ResidualReport:
    """First recurrence: dS_(nu-1)/dt + S_(nu-1) - S_(nu+1) + (2 nu/z) S_nu."""
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    dt_term = dS_dt(ShuParams(nu - 1.0, z, t))
    s_lo = _S(nu - 1.0, z, t, tol)
    s_hi = _S(nu + 1.0, z, t, tol)
    s_mid = (2.0 * nu / z) * _S(nu, z, t, tol)
    residual = dt_term + s_lo - s_hi + s_mid
    return ResidualReport("Rec1", p, residual, _scale(dt_term, s_lo, s_hi, s_mid))


def recurrence2_residual(p: ShuParams, tol: Tolerances = None) -> ResidualReport:
    """Second recurrence: dS_(nu-1)/dt + S_(nu-1) + S_(nu+1) + 2 dS_nu/dz.

    The z-derivative is a central finite difference of the oracle (step
    1e-5 z), deliberately not the order-shift formula.
    """
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    dt_term = dS_dt(ShuParams(nu - 1.0, z, t))
    s_lo = _S(nu - 1.0, z, t, tol)
    s_hi = _S(nu + 1.0, z, t, tol)
    h = 1e-5 * z
    dz_fd = (_S(nu, z + h, t, tol) - _S(nu, z - h, t, tol)) / (2.0 * h)
    residual = dt_term + s_lo + s_hi + 2.0 * dz_fd
    return ResidualReport("Rec2", p, residual, _scale(dt_term, s_lo, s_hi, 2.0 * dz_fd))


def _nested_radial_derivative(g, x: float, k: int, scale: float):
    """Apply ((1/x) d/dx)^k to g by nested central differences.

    Inner first differences use step 1e-4*coordinate*scale, the outer
    second-level difference 1e-3*coordinate*scale.
    """
    if k == 0:
        return g(x)

    def d1(func, xx, h):
        return (func(xx + h) - func(xx - h)) / (2.0 * h)

    if k == 1:
        return d1(g, x, 1e-4 * x * scale) / x

    def level1(xx):
        return d1(g, xx, 1e-4 * xx * scale) / xx

    return d1(level1, x, 1e-3 * x * scale) / x


def _radial_lhs_with_check(g, z: float, k: int, rhs: float):
    """Nested-difference LHS with a step-halving consistency check.

    All steps scale together, so the composite error is one h^2 term and
    the full/half pair Richardson-combines into an h^4-accurate value;
    without that the stated steps are truncation-limited past the grid
    tolerance where the log-derivative z/2t is steep.
    """
    full = _nested_radial_derivative(g, z, k, 1.0)
    half = _nested_radial_derivative(g, z, k, 0.5)
    scale = _scale(full, rhs)
    if abs(full - half) > 10.0 * _FD_CHECK[k] * scale:
        raise StepTooCoarse(
            f"k={k} radial derivative differs by {abs(full - half):.3e} "
            f"between step scales 1 and 1/2 (scale {scale:.3e})"
        )
    return (4.0 * half - full) / 3.0


def diff_relation1_residual(p: ShuParams, k: int, tol: Tolerances = None) -> ResidualReport:
    """k-fold radial derivative of z^nu S_nu against (-1)^k (1 + d/dt)^k
    applied to z^(nu-k) S_(nu-k); k in {0, 1, 2}."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1, or 2")
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    if k == 0:
        val = z**nu * _S(nu, z, t, tol)
        return ResidualReport("Diff1", p, 0.0, _scale(val), k=0)

    def g(zz):
        return zz**nu * _S(nu, zz, t, tol)

    down = ShuParams(nu - k, z, t)
    if k == 1:
        rhs = -(z ** (nu - 1.0)) * (_S(nu - 1.0, z, t, tol) + dS_dt(down))
    else:
        rhs = z ** (nu - 2.0) * (
            _S(nu - 2.0, z, t, tol) + 2.0 * dS_dt(down) + _d2S_dt2(down)
        )
    lhs = _radial_lhs_with_check(g, z, k, rhs)
    return ResidualReport("Diff1", p, lhs - rhs, _scale(lhs, rhs), k=k)


def diff_relation2_residual(p: ShuParams, k: int, tol: Tolerances = None) -> ResidualReport:
    """k-fold radial derivative of S_nu / z^nu against (-1)^k S_(nu+k)/z^(nu+k)."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1, or 2")
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    if k == 0:
        val = _S(nu, z, t, tol) / z**nu
        return ResidualReport("Diff2", p, 0.0, _scale(val), k=0)

    def g(zz):
        return _S(nu, zz, t, tol) / zz**nu

    rhs = (-1.0) ** k * _S(nu + k, z, t, tol) / z ** (nu + k)
    lhs = _radial_lhs_with_check(g, z, k, rhs)
    return ResidualReport("Diff2", p, lhs - rhs, _scale(lhs, rhs), k=k)


def pde_residual(p: ShuParams, mode: str = "exact", tol: Tolerances = None) -> ResidualReport:
    """Residual of z^2 S'' + z S' - (z^2 + nu^2) S - z^2 dS/dt.

    mode="exact" composes the z-derivatives from the order-shift ladder
    (only oracle values at orders nu, nu+1, nu+2 are needed);
    mode="fd" uses raw central differences of the oracle in z instead,
    which confirms the equation without routing through the ladder.
    """
    mode = mode.lower()
    if mode not in ("exact", "fd"):
        raise ValueError("mode must be 'exact' or 'fd'")
    tol = tol or _TIGHT
    nu, z, t = p.order, p.argument, p.endpoint
    s0 = _S(nu, z, t, tol)
    if mode == "exact":
        ds = dS_dz(p, tol)
        s1 = _S(nu + 1.0, z, t, tol)
        s2 = _S(nu + 2.0, z, t, tol)
        d2s = -(nu / (z * z)) * s0 + (nu / z) * ds - (((nu + 1.0) / z) * s1 - s2)
    else:
        h1 = 1e-5 * z
        ds = (_S(nu, z + h1, t, tol) - _S(nu, z - h1, t, tol)) / (2.0 * h1)
        h2 = 1e-3 * z
        d2_full = (_S(nu, z + h2, t, tol) - 2.0 * s0 + _S(nu, z - h2, t, tol)) / (h2 * h2)
        hh = 0.5 * h2
        d2_half = (_S(nu, z + hh, t, tol) - 2.0 * s0 + _S(nu, z - hh, t, tol)) / (hh * hh)
        d2s = (4.0 * d2_half - d2_full) / 3.0  # one Richardson step, h^4 accurate
    terms = (
        z * z * d2s,
        z * ds,
        -(z * z + nu * nu) * s0,
        -z * z * dS_dt(p),
    )
    return ResidualReport("PDE", p, math.fsum(terms), _scale(*terms), mode=mode)


def gen_incomplete_gamma(a: float, t_g: float, z_g: float, tol: Tolerances = None) -> float:
    """Generalized incomplete gamma: integral over tau in (t_g, inf) of
    tau^(a-1) e^(-tau - z_g/tau), computed as 2 z_g^(a/2) S_a(2 sqrt(z_g), z_g/t_g)."""
    if not (math.isfinite(t_g) and t_g > 0.0):
        raise DomainError("t", t_g, "must be strictly positive")
    if not (math.isfinite(z_g) and z_g > 0.0):
        raise DomainError("z", z_g, "must be strictly positive")
    tol = tol or _TIGHT
    s = shu_oracle(ShuParams(a, 2.0 * math.sqrt(z_g), z_g / t_g), tol).value
    return 2.0 * z_g ** (0.5 * a) * s


def leaky_aquifer(a: float, z_l: float, t_l: float, tol: Tolerances = None) -> float:
    """Leaky aquifer function: integral over tau in (1, inf) of
    e^(-z_l tau - t_l/tau) / tau^(a+1), computed as
    2 (z_l/t_l)^(a/2) S_(-a)(2 sqrt(z_l t_l), t_l)."""
    if not (math.isfinite(z_l) and z_l > 0.0):
        raise DomainError("z", z_l, "must be strictly positive")
    if not (math.isfinite(t_l) and t_l > 0.0):
        raise DomainError("t", t_l, "must be strictly positive")
    tol = tol or _TIGHT
    s = shu_oracle(ShuParams(-a, 2.0 * math.sqrt(z_l * t_l), t_l), tol).value
    return 2.0 * (z_l / t_l) ** (0.5 * a) * s


def incomplete_modified_bessel(a: float, z: float, t_imb: float, tol: Tolerances = None) -> float:
    """Truncated cosh integral (1/2) integral over tau in (t_imb, inf) of
    e^(-z cosh tau) cosh(a tau), computed as the symmetric combination
    (1/2)(S_a + S_(-a)) at endpoint z e^(-t_imb)/2."""
    if not (math.isfinite(z) and z > 0.0):
        raise DomainError("z", z, "must be strictly positive")
    if not (math.isfinite(t_imb) and t_imb > 0.0):
        raise DomainError("t_imb", t_imb, "must be strictly positive")
    tol = tol or _TIGHT
    endpoint = 0.5 * z * math.exp(-t_imb)
    if endpoint == 0.0:
        return 0.0  # truncation point beyond any representable contribution
    s_pos = shu_oracle(ShuParams(a, z, endpoint), tol).value
    s_neg = shu_oracle(ShuParams(-a, z, endpoint), tol).value
    return 0.5 * (s_pos + s_neg)
