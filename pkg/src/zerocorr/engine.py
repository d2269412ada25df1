"""Integration engine for the correlation integral.

The object of interest for a configuration of m = k + 2l points is

    rho_m = v_m * integral over R^d of
            prod_i f_i((M t)_i) * prod over tuple points |sum_j t_j w^j| dt,

with d = n - m + 1, M the sigma-built coefficient map and v_m the
Vandermonde modulus of the full tuple.  The mixed correlation function is
2^l times rho_m evaluated on the conjugate-closed tuple.

Backends: nested adaptive quadrature for small d, importance-sampled Monte
Carlo with model-matched proposals, and a Sobol variant for gaussian
models.  All stochastic paths draw from counter-based per-chunk streams,
so results are independent of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate as _sciint
from scipy.linalg import solve_triangular
from scipy.optimize import linprog
from scipy.stats import norm, qmc

from .densities import CoefficientModel
from .errors import (
    BackendUnavailableError,
    DegenerateProposalError,
    DimensionError,
    DomainError,
    GeometryError,
    InputError,
)
from .rngstream import RunningMoments, chunk_plan, chunk_rng, map_chunks
from .symmetric import (
    ZeroConfiguration,
    elementary_symmetric,
    map_matrix_from_sigma,
)

TRUNCATION_EPS = 1e-10
DEFAULT_ADAPTIVE_CUTOFF = 4
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BackendSettings:
    """How to carry out an integration."""

    backend: str = "adaptive"
    tol: float = 1e-8
    samples: int = 200_000
    seed: int | None = None
    workers: int = 1
    adaptive_cutoff: int = DEFAULT_ADAPTIVE_CUTOFF

    def require_seed(self) -> int:
        if self.seed is None:
            raise InputError("stochastic backends need an explicit seed")
        return int(self.seed)


@dataclass(frozen=True)
class IntegralEstimate:
    """A value with an error estimate and the effort that produced it."""

    value: float
    error: float
    backend: str
    effort: int
    clamped: float = 0.0

    def scaled(self, factor: float) -> "IntegralEstimate":
        return replace(self, value=self.value * factor, error=self.error * abs(factor))


@dataclass(frozen=True)
class IntegrandSpec:
    """Everything needed to evaluate the correlation integrand at a point."""

    model: CoefficientModel
    real_points: tuple
    complex_points: tuple
    matrix: np.ndarray  # (n+1, d)
    prefactor: float  # v_m for the generic path

    @property
    def n(self) -> int:
        return self.model.degree

    @property
    def m(self) -> int:
        return len(self.real_points) + 2 * len(self.complex_points)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]


def make_spec(model: CoefficientModel, cfg: ZeroConfiguration) -> IntegrandSpec:
    if cfg.m > model.degree:
        raise DimensionError(f"configuration size {cfg.m} exceeds degree {model.degree}")
    profile = elementary_symmetric(cfg)
    return IntegrandSpec(
        model=model,
        real_points=cfg.real_points,
        complex_points=cfg.complex_points,
        matrix=map_matrix_from_sigma(profile.sigma, model.degree),
        prefactor=profile.vandermonde,
    )


def poly_factor(spec: IntegrandSpec, t: np.ndarray) -> np.ndarray:
    """Product over the full tuple of |sum_j t_j w^j|, batched over rows of t.

    A conjugate pair contributes once as a squared modulus.
    """
    d = spec.dimension
    jpow = np.arange(d)
    vals = np.ones(t.shape[0])
    for x in spec.real_points:
        vals *= np.abs(t @ (float(x) ** jpow))
    for z in spec.complex_points:
        vals *= np.abs(t @ (complex(z) ** jpow)) ** 2
    return vals


def density_factor(spec: IntegrandSpec, t: np.ndarray) -> np.ndarray:
    """Product of f_i at the mapped coefficient slots, batched."""
    args = t @ spec.matrix.T
    vals = np.ones(t.shape[0])
    for i, dens in enumerate(spec.model.densities):
        vals *= dens.pdf(args[:, i])
    return vals


def integrand(spec: IntegrandSpec, t) -> np.ndarray | float:
    """Raw integrand (no v_m, no 2^l) at t, a point or a batch of points."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise InputError("integrand evaluated at non-finite point")
    single = t.ndim == 1
    t2 = t[None, :] if single else t
    out = density_factor(spec, t2) * poly_factor(spec, t2)
    return float(out[0]) if single else out


def truncation_box(spec: IntegrandSpec, eps: float = TRUNCATION_EPS) -> np.ndarray:
    """Per-coordinate bounds |t_j| <= B_j outside which density mass is negligible.

    Exploits the unit-triangular rows m..n of the coefficient map:
    (M t)_{m+j} = t_j + known multiples of later coordinates, so radii of the
    top densities back-substitute into coordinate bounds.
    """
    M = spec.matrix
    m, d = spec.m, spec.dimension
    radii = np.array([dens.decay_radius(eps) for dens in spec.model.densities])
    B = np.zeros(d)
    for j in range(d - 1, -1, -1):
        bound = radii[m + j]
        for j2 in range(j + 1, d):
            bound += abs(M[m + j, j2]) * B[j2]
        B[j] = bound
    return B


# ---------------------------------------------------------------------------
# adaptive backend


def _innermost_breakpoints(spec: IntegrandSpec, tail: np.ndarray, lo: float, hi: float):
    """Kink locations of the innermost 1-D slice, for the quadrature subdivider.

    The polynomial modulus kinks where its value crosses zero (one point per
    real configuration point, linear in t_0 since the t_0 coefficient is 1),
    and piecewise densities kink where a mapped slot hits a support edge.
    """
    d = spec.dimension
    pts = []
    jpow = np.arange(1, d)
    for x in spec.real_points:
        pts.append(-float(tail @ (float(x) ** jpow)) if d > 1 else 0.0)
    M = spec.matrix
    for i, dens in enumerate(spec.model.densities):
        edges = [e for e in dens.support if math.isfinite(e)]
        if not edges or M[i, 0] == 0.0:
            continue
        rest = float(M[i, 1:] @ tail) if d > 1 else 0.0
        for e in edges:
            pts.append((e - rest) / M[i, 0])
    pts = sorted(p for p in pts if lo < p < hi)
    return pts or None


def integrate_adaptive(spec: IntegrandSpec, tol: float = 1e-8,
                       cutoff: int = DEFAULT_ADAPTIVE_CUTOFF) -> IntegralEstimate:
    """Nested Gauss-Kronrod quadrature over the truncated box."""
    d = spec.dimension
    if d > cutoff:
        raise BackendUnavailableError(
            f"adaptive backend limited to dimension {cutoff}, integral has {d}; "
            "use the monte_carlo backend"
        )
    B = truncation_box(spec)
    effort = [0]
    t = np.zeros(d)

    def level(depth: int):
        if depth < 0:
            effort[0] += 1
            return integrand(spec, t)
        lo, hi = -B[depth], B[depth]

        def slice_fn(v):
            t[depth] = v
            return level(depth - 1)

        pts = _innermost_breakpoints(spec, t[1:], lo, hi) if depth == 0 else None
        val, err = _sciint.quad(slice_fn, lo, hi, epsabs=1e-13, epsrel=tol,
                                limit=200, points=pts)
        if depth == d - 1:
            level.outer_err = err
        return val

    level.outer_err = 0.0
    value = level(d - 1)
    clamped = 0.0
    if value < 0.0:
        clamped = -value
        value = 0.0
    error = level.outer_err + TRUNCATION_EPS * (1.0 + abs(value))
    return IntegralEstimate(value, error, "adaptive", effort[0], clamped)


# ---------------------------------------------------------------------------
# feasible polytope for uniform models


@dataclass(frozen=True)
class FeasiblePolytope:
    """lo <= M t <= hi with a per-coordinate bounding box and LP certificates."""

    matrix: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    box_lo: np.ndarray
    box_hi: np.ndarray
    certificates: tuple  # one optimizer point per box face
    empty: bool

    def contains(self, t, tol: float = 1e-9) -> np.ndarray:
        t = np.atleast_2d(np.asarray(t, dtype=float))
        args = t @ self.matrix.T
        return np.all((args >= self.lo - tol) & (args <= self.hi + tol), axis=1)


def build_polytope(spec: IntegrandSpec) -> FeasiblePolytope:
    if spec.model.kind != "uniform":
        raise InputError("feasible polytope is defined for all-uniform models")
    M = spec.matrix
    d = spec.dimension
    lo = np.array([dens.a for dens in spec.model.densities])
    hi = np.array([dens.b for dens in spec.model.densities])
    A = np.vstack([M, -M])
    b = np.concatenate([hi, -lo])
    box_lo = np.zeros(d)
    box_hi = np.zeros(d)
    certs = []
    for j in range(d):
        for sign, target in ((1.0, box_lo), (-1.0, box_hi)):
            c = np.zeros(d)
            c[j] = sign
            res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * d, method="highs")
            if res.status == 2:
                return FeasiblePolytope(M, lo, hi, box_lo, box_hi, (), True)
            if res.status != 0:
                raise GeometryError(f"LP for coordinate {j} failed: {res.message}")
            target[j] = sign * res.fun
            certs.append(np.asarray(res.x))
    return FeasiblePolytope(M, lo, hi, box_lo, box_hi, tuple(certs), False)


# ---------------------------------------------------------------------------
# Monte Carlo backend


def _gaussian_inner(spec: IntegrandSpec):
    """Cholesky data for the exact gaussian proposal.

    The density product equals C exp(-t'Qt/2) with Q = M' diag(1/v^2) M, so
    sampling t from N(0, Q^-1) leaves a constant weight times the polynomial
    factor.
    """
    M = spec.matrix
    v = np.array([dens.v for dens in spec.model.densities])
    Q = (M / v[:, None] ** 2).T @ M
    L = np.linalg.cholesky(Q)
    n, d = spec.n, spec.dimension
    const = (
        _TWO_PI ** (0.5 * (d - n - 1)) / np.prod(v) / np.prod(np.diag(L))
    )
    return L, const


def _mc_chunk(spec: IntegrandSpec, proposal, seed: int, chunk_index: int, count: int):
    rng = chunk_rng(seed, chunk_index)
    kind, data = proposal
    if kind == "gaussian":
        L, const = data
        y = rng.standard_normal((count, spec.dimension))
        t = solve_triangular(L, y.T, trans="T", lower=True).T
        w = const * poly_factor(spec, t)
    elif kind == "exponential":
        T = data
        u = rng.exponential(1.0, (count, spec.dimension))
        t = solve_triangular(T, u.T, lower=False).T
        rest = t @ spec.matrix[: spec.m].T
        ok = np.all(rest >= 0.0, axis=1)
        w = np.where(ok, np.exp(-np.sum(rest, axis=1)), 0.0) * poly_factor(spec, t)
    elif kind == "uniform_seq":
        # walk the unit-triangular block bottom-up: each t_j is uniform on the
        # exact interval allowed by its own row given the later coordinates,
        # leaving only the rows below m as indicator constraints
        lo, hi, inv_low_vol = data
        M = spec.matrix
        m, d = spec.m, spec.dimension
        t = np.empty((count, d))
        for j in range(d - 1, -1, -1):
            shift = t[:, j + 1 :] @ M[m + j, j + 1 :] if j < d - 1 else 0.0
            t[:, j] = rng.uniform(lo[m + j], hi[m + j], count) - shift
        args = t @ M[:m].T
        ok = np.all((args >= lo[:m]) & (args <= hi[:m]), axis=1)
        w = ok * inv_low_vol * poly_factor(spec, t)
    else:  # per-coordinate cauchy
        scales = data
        u = rng.random((count, spec.dimension))
        t = scales * np.tan(math.pi * (u - 0.5))
        q = np.prod(scales / (math.pi * (scales**2 + t**2)), axis=1)
        w = integrand(spec, t) / q
    return float(np.sum(w)), float(np.sum(w * w)), count, int(np.count_nonzero(w))


def _build_proposal(spec: IntegrandSpec):
    kind = spec.model.kind
    if kind == "gaussian":
        return ("gaussian", _gaussian_inner(spec))
    if kind == "exponential":
        return ("exponential", spec.matrix[spec.m :].copy())
    if kind == "uniform":
        lo = np.array([dens.a for dens in spec.model.densities])
        hi = np.array([dens.b for dens in spec.model.densities])
        inv_low_vol = float(np.prod(1.0 / (hi[: spec.m] - lo[: spec.m])))
        return ("uniform_seq", (lo, hi, inv_low_vol))
    return ("cauchy", truncation_box(spec))


def integrate_monte_carlo(spec: IntegrandSpec, samples: int, seed: int,
                          workers: int = 1) -> IntegralEstimate:
    """Importance sampling with a model-matched proposal; see module docs."""
    if samples < 1000:
        raise InputError("monte carlo backend needs at least 1000 samples")
    proposal = _build_proposal(spec)
    if proposal[0] == "empty":
        return IntegralEstimate(0.0, 0.0, "monte_carlo", 0)
    plan = chunk_plan(samples)
    args = [(spec, proposal, seed, idx, count) for idx, count in plan]
    acc = RunningMoments()
    nonzero = 0
    for total, total_sq, count, nz in map_chunks(_mc_chunk, args, workers):
        acc.add(total, total_sq, count)
        nonzero += nz
    if proposal[0] == "cauchy" and nonzero == 0 and samples >= 100_000:
        raise DegenerateProposalError(
            f"proposal produced no nonzero weight in {samples} samples"
        )
    return IntegralEstimate(acc.mean, acc.stderr, "monte_carlo", samples)


def integrate_quasi(spec: IntegrandSpec, samples: int, seed: int,
                    replicates: int = 8) -> IntegralEstimate:
    """Scrambled-Sobol variant of the gaussian proposal.

    Error is estimated from the spread of independently scrambled replicates.
    """
    if spec.model.kind != "gaussian":
        raise BackendUnavailableError("quasi_random backend covers gaussian models only")
    L, const = _gaussian_inner(spec)
    d = spec.dimension
    log2n = max(4, int(math.ceil(math.log2(max(1, samples // replicates)))))
    means = []
    for r in range(replicates):
        eng = qmc.Sobol(d, scramble=True, seed=seed * replicates + r)
        u = eng.random_base2(log2n)
        y = norm.ppf(np.clip(u, 1e-15, 1 - 1e-15))
        t = solve_triangular(L, y.T, trans="T", lower=True).T
        means.append(const * float(np.mean(poly_factor(spec, t))))
    means = np.array(means)
    value = float(np.mean(means))
    err = float(np.std(means, ddof=1) / math.sqrt(replicates))
    return IntegralEstimate(value, err, "quasi_random", replicates * 2**log2n)


def _integrate(spec: IntegrandSpec, settings: BackendSettings) -> IntegralEstimate:
    if settings.backend == "adaptive":
        return integrate_adaptive(spec, settings.tol, settings.adaptive_cutoff)
    if settings.backend == "monte_carlo":
        return integrate_monte_carlo(spec, settings.samples, settings.require_seed(),
                                     settings.workers)
    if settings.backend == "quasi_random":
        return integrate_quasi(spec, settings.samples, settings.require_seed())
    raise InputError(f"unknown backend {settings.backend!r}")


# ---------------------------------------------------------------------------
# correlation functions


def rho_m(model: CoefficientModel, cfg: ZeroConfiguration,
          settings: BackendSettings = BackendSettings()) -> IntegralEstimate:
    """v_m times the correlation integral over the full tuple; no 2^l."""
    spec = make_spec(model, cfg)
    if spec.prefactor == 0.0:
        return IntegralEstimate(0.0, 0.0, settings.backend, 0)
    return _integrate(spec, settings).scaled(spec.prefactor)


def rho_kl(model: CoefficientModel, x, z,
           settings: BackendSettings = BackendSettings()) -> IntegralEstimate:
    """Mixed (k,l)-correlation function at real points x, upper-half points z."""
    cfg = ZeroConfiguration(tuple(x), tuple(z))
    if cfg.m > model.degree:
        raise DimensionError(f"k + 2l = {cfg.m} exceeds degree {model.degree}")
    return rho_m(model, cfg, settings).scaled(2.0 ** cfg.l)


def _real_density_spec(model: CoefficientModel, x: float) -> IntegrandSpec:
    # banded two-term rows f_i(t_{i-1} - x t_i), assembled directly
    n = model.degree
    M = np.zeros((n + 1, n))
    for i in range(n + 1):
        if 0 <= i - 1:
            M[i, i - 1] = 1.0
        if i < n:
            M[i, i] = -x
    return IntegrandSpec(model=model, real_points=(float(x),), complex_points=(),
                         matrix=M, prefactor=1.0)


def rho_real_density(model: CoefficientModel, x: float,
                     settings: BackendSettings = BackendSettings()) -> IntegralEstimate:
    """Density of real zeros at x (the k=1, l=0 case, specialized assembly)."""
    return _integrate(_real_density_spec(model, float(x)), settings)


def _complex_density_spec(model: CoefficientModel, z: complex) -> IntegrandSpec:
    # banded three-term rows f_i(t_{i-2} - 2 Re z t_{i-1} + |z|^2 t_i)
    n = model.degree
    d = n - 1
    M = np.zeros((n + 1, d))
    re2 = 2.0 * z.real
    zz = abs(z) ** 2
    for i in range(n + 1):
        if 0 <= i - 2:
            M[i, i - 2] = 1.0
        if 0 <= i - 1 < d:
            M[i, i - 1] = -re2
        if i < d:
            M[i, i] = zz
    return IntegrandSpec(model=model, real_points=(), complex_points=(complex(z),),
                         matrix=M, prefactor=4.0 * z.imag)


def rho_complex_density(model: CoefficientModel, z: complex,
                        settings: BackendSettings = BackendSettings()) -> IntegralEstimate:
    """Density of complex zeros at z in the open upper half-plane."""
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"complex density needs Im z > 0, got {z}")
    if model.degree < 2:
        return IntegralEstimate(0.0, 0.0, settings.backend, 0)
    spec = _complex_density_spec(model, z)
    return _integrate(spec, settings).scaled(spec.prefactor)


# ---------------------------------------------------------------------------
# joint Monte Carlo over configuration boxes


def _batched_sigma(points: np.ndarray) -> np.ndarray:
    """Elementary symmetric values of each row of a (batch, m) complex array."""
    batch, m = points.shape
    e = np.zeros((batch, m + 1), dtype=complex)
    e[:, 0] = 1.0
    for r in range(m):
        e[:, 1 : r + 2] = e[:, 1 : r + 2] + points[:, r : r + 1] * e[:, 0 : r + 1]
    return e


def _batched_vandermonde(points: np.ndarray) -> np.ndarray:
    batch, m = points.shape
    v = np.ones(batch)
    for i in range(m):
        for j in range(i + 1, m):
            v *= np.abs(points[:, i] - points[:, j])
    return v


def _batched_map(sig: np.ndarray, n: int) -> np.ndarray:
    batch, m1 = sig.shape
    m = m1 - 1
    d = n - m + 1
    M = np.zeros((batch, n + 1, d))
    for i in range(n + 1):
        for j in range(max(0, i - m), min(d - 1, i) + 1):
            idx = m - i + j
            M[:, i, j] = (-1.0) ** idx * sig[:, idx]
    return M


def _batched_poly_factor(t, xs, zs):
    d = t.shape[1]
    jpow = np.arange(d)
    vals = np.ones(t.shape[0])
    for i in range(xs.shape[1]):
        xp = xs[:, i][:, None] ** jpow
        vals *= np.abs(np.sum(t * xp, axis=1))
    for i in range(zs.shape[1]):
        zp = zs[:, i][:, None] ** jpow
        vals *= np.abs(np.sum(t * zp, axis=1)) ** 2
    return vals


def _corr_chunk(model: CoefficientModel, real_boxes, complex_boxes, scale: float,
                seed: int, chunk_index: int, count: int):
    rng = chunk_rng(seed, chunk_index)
    k, l = len(real_boxes), len(complex_boxes)
    n = model.degree
    m = k + 2 * l
    d = n - m + 1

    w_outer = np.ones(count)
    xs = np.empty((count, k))
    for i, box in enumerate(real_boxes):
        if box is None:
            u = rng.random(count)
            x = scale * np.tan(math.pi * (u - 0.5))
            w_outer *= math.pi * (scale**2 + x**2) / scale
        else:
            a, b = box
            x = rng.uniform(a, b, count)
            w_outer *= b - a
        xs[:, i] = x
    zs = np.empty((count, l), dtype=complex)
    for i, box in enumerate(complex_boxes):
        if box is None:
            u = rng.random(count)
            re = scale * np.tan(math.pi * (u - 0.5))
            w_outer *= math.pi * (scale**2 + re**2) / scale
            u = rng.random(count)
            im = scale * np.tan(0.5 * math.pi * u)
            w_outer *= 0.5 * math.pi * (scale**2 + im**2) / scale
        else:
            r0, r1, i0, i1 = box
            re = rng.uniform(r0, r1, count)
            im = rng.uniform(i0, i1, count)
            w_outer *= (r1 - r0) * (i1 - i0)
        zs[:, i] = re + 1j * im

    pts = np.empty((count, m), dtype=complex)
    pts[:, :k] = xs
    for i in range(l):
        pts[:, k + 2 * i] = zs[:, i]
        pts[:, k + 2 * i + 1] = np.conj(zs[:, i])

    sig = _batched_sigma(pts).real
    v = _batched_vandermonde(pts)
    M = _batched_map(sig, n)

    kind = model.kind
    if kind == "gaussian":
        vstd = np.array([dens.v for dens in model.densities])
        Q = np.einsum("sij,i,sik->sjk", M, 1.0 / vstd**2, M)
        L = np.linalg.cholesky(Q)
        y = rng.standard_normal((count, d))
        t = np.linalg.solve(np.swapaxes(L, 1, 2), y[..., None])[..., 0]
        diagL = L[:, np.arange(d), np.arange(d)]
        const = _TWO_PI ** (0.5 * (d - n - 1)) / np.prod(vstd) / np.prod(diagL, axis=1)
        w_inner = const * _batched_poly_factor(t, xs, zs)
    elif kind == "exponential":
        T = M[:, m:, :]
        u = rng.exponential(1.0, (count, d))
        t = np.linalg.solve(T, u[..., None])[..., 0]
        rest = np.einsum("sij,sj->si", M[:, :m, :], t)
        ok = np.all(rest >= 0.0, axis=1)
        w_inner = np.where(ok, np.exp(-np.sum(rest, axis=1)), 0.0)
        w_inner *= _batched_poly_factor(t, xs, zs)
    elif kind == "uniform":
        # sequential exact-interval sampling through the unit-triangular block;
        # only the rows below m stay as indicator constraints
        lo = np.array([dens.a for dens in model.densities])
        hi = np.array([dens.b for dens in model.densities])
        t = np.empty((count, d))
        for j in range(d - 1, -1, -1):
            if j < d - 1:
                shift = np.einsum("sj,sj->s", M[:, m + j, j + 1 :], t[:, j + 1 :])
            else:
                shift = 0.0
            t[:, j] = rng.uniform(lo[m + j], hi[m + j], count) - shift
        args = np.einsum("sij,sj->si", M[:, :m, :], t)
        inside = np.all((args >= lo[:m]) & (args <= hi[:m]), axis=1)
        w_inner = inside / float(np.prod(hi[:m] - lo[:m]))
        w_inner *= _batched_poly_factor(t, xs, zs)
    else:
        radii = np.array([dens.decay_radius(TRUNCATION_EPS) for dens in model.densities])
        B = np.zeros((count, d))
        for j in range(d - 1, -1, -1):
            bound = np.full(count, radii[m + j])
            for j2 in range(j + 1, d):
                bound += np.abs(M[:, m + j, j2]) * B[:, j2]
            B[:, j] = bound
        u = rng.random((count, d))
        t = B * np.tan(math.pi * (u - 0.5))
        q = np.prod(B / (math.pi * (B**2 + t**2)), axis=1)
        args = np.einsum("sij,sj->si", M, t)
        densprod = np.ones(count)
        for i, dens in enumerate(model.densities):
            densprod *= dens.pdf(args[:, i])
        w_inner = densprod * _batched_poly_factor(t, xs, zs) / q

    w = w_outer * (2.0**l) * v * w_inner
    return float(np.sum(w)), float(np.sum(w * w)), count


def integrate_correlation(model: CoefficientModel, real_boxes, complex_boxes,
                          samples: int, seed: int, workers: int = 1,
                          scale: float = 1.0) -> IntegralEstimate:
    """Integral of rho_{k,l} over a product of boxes by joint Monte Carlo.

    ``real_boxes`` holds intervals ``(a, b)`` or ``None`` for the whole real
    line; ``complex_boxes`` holds rectangles ``(re0, re1, im0, im1)`` or
    ``None`` for the whole upper half-plane.  Unbounded coordinates use
    heavy-tailed Cauchy proposals of the given ``scale``.  One inner
    integration point is drawn per outer configuration sample.
    """
    k, l = len(real_boxes), len(complex_boxes)
    if k + 2 * l > model.degree:
        raise DimensionError("k + 2l exceeds the degree")
    if k + l == 0:
        raise InputError("need at least one box")
    plan = chunk_plan(samples)
    args = [
        (model, tuple(real_boxes), tuple(complex_boxes), scale, seed, idx, count)
        for idx, count in plan
    ]
    acc = RunningMoments()
    for total, total_sq, count in map_chunks(_corr_chunk, args, workers):
        acc.add(total, total_sq, count)
    return IntegralEstimate(acc.mean, acc.stderr, "monte_carlo", samples)
