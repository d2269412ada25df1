"""Fully explicit joint densities when the configuration pins down all zeros.

When k + 2l = n the correlation integral collapses to one dimension:

    rho_{n-2l,l} = 2^l v_n * integral of |t|^n prod_i f_i((-1)^(n-i) sigma_(n-i) t) dt.

For the uniform, gaussian and exponential families this t-integral is
elementary, giving the closed forms below.  ``joint_density_quadrature``
keeps the 1-D integral as an independent oracle for all of them.

The gaussian prefactor comes from direct evaluation of the absolute-moment
integral (the n = 1 case must reduce to the Cauchy density, which pins the
constant), and the exponential form carries the 2^l factor inherited from
the general relation; the 1-D oracle and root counting by simulation both
confirm these normalizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _sciint

from .densities import CoefficientModel
from .engine import BackendSettings, IntegralEstimate, integrate_correlation
from .errors import DimensionError, DomainError, ModelMismatchError
from .symmetric import ZeroConfiguration, elementary_symmetric

_INDICATOR_SLACK = 1e-12


@dataclass(frozen=True)
class JointDensityValue:
    """A closed-form joint density value with its sign-indicator status."""

    value: float
    kind: str
    indicator_ok: bool = True


def _full_profile(model: CoefficientModel, cfg: ZeroConfiguration):
    if cfg.m != model.degree:
        raise DimensionError(
            f"closed forms need k + 2l = n, got {cfg.m} vs degree {model.degree}"
        )
    return elementary_symmetric(cfg)


def uniform_joint(model: CoefficientModel, cfg: ZeroConfiguration) -> JointDensityValue:
    """Joint density for coefficients uniform on [-1, 1]."""
    for dens in model.densities:
        if dens.kind != "uniform" or dens.a != -1.0 or dens.b != 1.0:
            raise ModelMismatchError("uniform closed form needs uniform(-1, 1) coefficients")
    prof = _full_profile(model, cfg)
    n = model.degree
    smax = float(np.max(np.abs(prof.sigma)))
    value = 2.0 ** (cfg.l - n) / (n + 1) * prof.vandermonde / smax ** (n + 1)
    return JointDensityValue(value, "uniform")


def gaussian_joint(model: CoefficientModel, cfg: ZeroConfiguration) -> JointDensityValue:
    """Joint density for centered gaussian coefficients with per-slot spread."""
    if model.kind != "gaussian":
        raise ModelMismatchError("gaussian closed form needs gaussian coefficients")
    prof = _full_profile(model, cfg)
    n = model.degree
    v = np.array([dens.v for dens in model.densities])
    a = float(np.sum(prof.sigma[::-1] ** 2 / v**2))
    value = (
        2.0**cfg.l
        * prof.vandermonde
        * math.gamma((n + 1) / 2.0)
        * a ** (-(n + 1) / 2.0)
        / (math.pi ** ((n + 1) / 2.0) * float(np.prod(v)))
    )
    return JointDensityValue(value, "gaussian")


def exponential_joint(model: CoefficientModel, cfg: ZeroConfiguration) -> JointDensityValue:
    """Joint density for rate-1 exponential coefficients.

    The sign indicator ((-1)^i sigma_i >= 0 for all i) failing returns value
    zero rather than raising.
    """
    if model.kind != "exponential":
        raise ModelMismatchError("exponential closed form needs exponential coefficients")
    prof = _full_profile(model, cfg)
    n = model.degree
    signs = (-1.0) ** np.arange(n + 1) * prof.sigma
    ok = bool(np.all(signs >= -_INDICATOR_SLACK * (1.0 + np.abs(prof.sigma))))
    if not ok:
        return JointDensityValue(0.0, "exponential", indicator_ok=False)
    s = 1.0
    for x in cfg.real_points:
        s *= 1.0 - x
    for z in cfg.complex_points:
        s *= 1.0 - 2.0 * z.real + abs(z) ** 2
    value = 2.0**cfg.l * math.factorial(n) * prof.vandermonde / s ** (n + 1)
    return JointDensityValue(value, "exponential")


def joint_density(model: CoefficientModel, cfg: ZeroConfiguration) -> JointDensityValue:
    """Family dispatch, falling back to the 1-D quadrature for other models."""
    kind = model.kind
    if kind == "uniform" and all(d.a == -1.0 and d.b == 1.0 for d in model.densities):
        return uniform_joint(model, cfg)
    if kind == "gaussian":
        return gaussian_joint(model, cfg)
    if kind == "exponential":
        return exponential_joint(model, cfg)
    return JointDensityValue(joint_density_quadrature(model, cfg), kind)


def joint_density_quadrature(model: CoefficientModel, cfg: ZeroConfiguration,
                             tol: float = 1e-12) -> float:
    """Independent 1-D quadrature of the collapsed correlation integral."""
    prof = _full_profile(model, cfg)
    n = model.degree
    if prof.vandermonde == 0.0:
        return 0.0
    sig_rev = prof.sigma[::-1]  # sigma_{n-i} at slot i
    radius = np.inf
    for i, dens in enumerate(model.densities):
        if sig_rev[i] != 0.0:
            radius = min(radius, dens.decay_radius(1e-14) / abs(sig_rev[i]))

    signs = (-1.0) ** (n - np.arange(n + 1))

    def f(t):
        val = abs(t) ** n
        for i, dens in enumerate(model.densities):
            val *= float(dens.pdf(signs[i] * sig_rev[i] * t))
        return val

    val, _ = _sciint.quad(f, -radius, radius, epsabs=1e-15, epsrel=tol,
                          limit=500, points=[0.0])
    return 2.0**cfg.l * prof.vandermonde * val


# ---------------------------------------------------------------------------
# probability of an exact real-zero count


def _ordered_real_block(pointval, xs_outer, zs, kq, tol, upper=math.inf):
    """Integral over ordered real coordinates x_1 < ... < x_kq, compactified."""

    def rec(i, lower, xs):
        if i == kq:
            return pointval(xs, zs)
        th_lo = math.atan(lower)
        th_hi = math.atan(upper)

        def g(th):
            x = math.tan(th)
            return rec(i + 1, x, xs + [x]) * (1.0 + x * x)

        val, _ = _sciint.quad(g, th_lo, th_hi, epsabs=1e-12, epsrel=tol, limit=200)
        return val

    return rec(0, -math.inf, list(xs_outer))


def _prob_quadrature(model: CoefficientModel, l: int, tol: float) -> IntegralEstimate:
    n = model.degree
    kq = n - 2 * l
    effort = [0]

    def pointval(xs, zs):
        effort[0] += 1
        cfg = ZeroConfiguration(tuple(xs), tuple(zs))
        return joint_density(model, cfg).value

    # exponential coefficients are positive: no positive real zeros
    real_upper = 0.0 if model.kind == "exponential" else math.inf

    if l == 0:
        # ordering the x's absorbs the 1/kq! prefactor
        value = _ordered_real_block(pointval, (), (), kq, tol, upper=real_upper)
        return IntegralEstimate(value, tol * (1 + abs(value)), "adaptive", effort[0])

    # l == 1: two compactified outer dimensions for z, ordered x block inside
    re_upper = 0.0 if (model.kind == "exponential" and kq == 0) else 0.5 * math.pi

    def h(th_re, th_im):
        if th_im <= 0.0:
            return 0.0
        z = complex(math.tan(th_re), math.tan(th_im))
        jac = (1.0 + z.real**2) * (1.0 + z.imag**2)
        return jac * _ordered_real_block(pointval, (), (z,), kq, tol, upper=real_upper)

    def outer_im(th_im):
        hi = math.atan(re_upper) if re_upper != 0.5 * math.pi else 0.5 * math.pi
        val, _ = _sciint.quad(lambda th_re: h(th_re, th_im), -0.5 * math.pi, hi,
                              epsabs=1e-12, epsrel=tol, limit=200)
        return val

    value, err = _sciint.quad(outer_im, 0.0, 0.5 * math.pi, epsabs=1e-12,
                              epsrel=tol, limit=200)
    return IntegralEstimate(value, err + tol * (1 + abs(value)), "adaptive", effort[0])


def prob_real_count(model: CoefficientModel, l: int,
                    settings: BackendSettings = BackendSettings(tol=1e-8)) -> IntegralEstimate:
    """Probability that the polynomial has exactly n - 2l real zeros.

    Nested adaptive quadrature over the compactified configuration space for
    n <= 3 (so l <= 1); joint Monte Carlo with Cauchy proposals beyond.
    """
    n = model.degree
    if l < 0 or 2 * l > n:
        raise DomainError(f"need 0 <= 2l <= n, got l={l}, n={n}")
    kq = n - 2 * l
    if settings.backend == "adaptive" and n <= 3:
        return _prob_quadrature(model, l, settings.tol)
    est = integrate_correlation(
        model, [None] * kq, [None] * l, settings.samples, settings.require_seed(),
        settings.workers,
    )
    norm_f = math.factorial(l) * math.factorial(kq)
    return est.scaled(1.0 / norm_f)
