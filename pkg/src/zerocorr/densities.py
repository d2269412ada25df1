"""Coefficient laws: pointwise evaluation, sampling and tail metadata.

A :class:`CoefficientModel` is the degree together with one density per
coefficient slot.  Built-in families are ``uniform(a, b)``, centered
``gaussian(v)`` (standard deviation ``v``), rate-1 ``exponential`` and a
``tabulated`` density given by a grid with linear interpolation.  Rescaled
exponential laws are the caller's business.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from .errors import InputError, UnsupportedDensityError

KINDS = ("uniform", "gaussian", "exponential", "tabulated")

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class CoefficientDensity:
    """One absolutely continuous coefficient law.

    Immutable after construction; all evaluation is pure and can be called
    concurrently.
    """

    kind: str
    a: float = -1.0
    b: float = 1.0
    v: float = 1.0
    grid: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown density kind {self.kind!r}")
        if self.kind == "uniform" and not self.b > self.a:
            raise InputError("uniform density needs b > a")
        if self.kind == "gaussian" and not self.v > 0:
            raise InputError("gaussian density needs v > 0")
        if self.kind == "tabulated":
            g = np.asarray(self.grid, dtype=float)
            vals = np.asarray(self.values, dtype=float)
            if g.size < 2 or g.size != vals.size:
                raise InputError("tabulated density needs matching grid/values, >= 2 points")
            if np.any(np.diff(g) <= 0):
                raise InputError("tabulated grid must be strictly increasing")
            if np.any(vals < 0):
                raise InputError("tabulated values must be nonnegative")
            mass = np.trapezoid(vals, g)
            if abs(mass - 1.0) > 1e-6:
                raise InputError(f"tabulated density integrates to {mass}, not 1")

    def pdf(self, u):
        """Density value at ``u`` (scalar or array); exactly 0 off support."""
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            raise InputError("density evaluated at non-finite point")
        if self.kind == "uniform":
            inside = (u >= self.a) & (u <= self.b)
            return np.where(inside, 1.0 / (self.b - self.a), 0.0)
        if self.kind == "gaussian":
            return np.exp(-0.5 * (u / self.v) ** 2) / (_SQRT2PI * self.v)
        if self.kind == "exponential":
            return np.where(u >= 0, np.exp(-np.where(u >= 0, u, 0.0)), 0.0)
        g = np.asarray(self.grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        out = np.interp(u, g, vals, left=0.0, right=0.0)
        return out

    def sample(self, rng: np.random.Generator, size=None):
        """Draw from the law; deterministic given the generator state."""
        if self.kind == "uniform":
            return rng.uniform(self.a, self.b, size=size)
        if self.kind == "gaussian":
            return rng.normal(0.0, self.v, size=size)
        if self.kind == "exponential":
            return rng.exponential(1.0, size=size)
        g = np.asarray(self.grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        cdf = np.concatenate([[0.0], np.cumsum(0.5 * (vals[1:] + vals[:-1]) * np.diff(g))])
        cdf /= cdf[-1]
        return np.interp(rng.random(size=size), cdf, g)

    def decay_radius(self, eps: float) -> float:
        """Radius R with density mass outside [-R, R] at most ``eps``."""
        if not 0.0 < eps < 1.0:
            raise InputError("eps must lie in (0, 1)")
        if self.kind == "uniform":
            return max(abs(self.a), abs(self.b))
        if self.kind == "gaussian":
            return float(self.v * norm.isf(eps / 2.0))
        if self.kind == "exponential":
            return -math.log(eps)
        if self.kind == "tabulated":
            # bounded grid support, mass outside is exactly zero
            return max(abs(self.grid[0]), abs(self.grid[-1]))
        raise UnsupportedDensityError(self.kind)

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "uniform":
            return (self.a, self.b)
        if self.kind == "gaussian":
            return (-math.inf, math.inf)
        if self.kind == "exponential":
            return (0.0, math.inf)
        return (self.grid[0], self.grid[-1])

    def to_json(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "a": self.a, "b": self.b}
        if self.kind == "gaussian":
            return {"kind": "gaussian", "v": self.v}
        if self.kind == "exponential":
            return {"kind": "exponential"}
        return {"kind": "tabulated", "grid": list(self.grid), "values": list(self.values)}

    @classmethod
    def from_json(cls, d: dict) -> "CoefficientDensity":
        kind = d.get("kind")
        if kind == "uniform":
            return cls("uniform", a=float(d["a"]), b=float(d["b"]))
        if kind == "gaussian":
            return cls("gaussian", v=float(d["v"]))
        if kind == "exponential":
            return cls("exponential")
        if kind == "tabulated":
            return cls("tabulated", grid=tuple(d["grid"]), values=tuple(d["values"]))
        raise InputError(f"unknown density descriptor {d!r}")


def uniform(a: float = -1.0, b: float = 1.0) -> CoefficientDensity:
    return CoefficientDensity("uniform", a=a, b=b)


def gaussian(v: float = 1.0) -> CoefficientDensity:
    return CoefficientDensity("gaussian", v=v)


def exponential() -> CoefficientDensity:
    return CoefficientDensity("exponential")


def tabulated(grid, values) -> CoefficientDensity:
    return CoefficientDensity("tabulated", grid=tuple(grid), values=tuple(values))


@dataclass(frozen=True)
class CoefficientModel:
    """Degree ``n`` plus the ``n + 1`` coefficient densities, index i <-> z^i."""

    degree: int
    densities: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.degree < 1:
            raise InputError("degree must be >= 1")
        if len(self.densities) != self.degree + 1:
            raise InputError(
                f"need {self.degree + 1} densities for degree {self.degree}, "
                f"got {len(self.densities)}"
            )

    @property
    def n(self) -> int:
        return self.degree

    @property
    def kind(self) -> str:
        """Common density kind, or 'mixed'."""
        kinds = {d.kind for d in self.densities}
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def sample_coefficients(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` coefficient vectors, shape (size, n + 1)."""
        out = np.empty((size, self.degree + 1))
        for i, d in enumerate(self.densities):
            out[:, i] = d.sample(rng, size=size)
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "densities": [d.to_json() for d in self.densities]}

    @classmethod
    def from_json(cls, d: dict) -> "CoefficientModel":
        degree = int(d["degree"])
        spec = d["densities"]
        if isinstance(spec, dict):
            spec = [spec] * (degree + 1)
        return cls(degree, tuple(CoefficientDensity.from_json(s) for s in spec))


def uniform_model(n: int, a: float = -1.0, b: float = 1.0) -> CoefficientModel:
    return CoefficientModel(n, (uniform(a, b),) * (n + 1))


def gaussian_model(n: int, v=1.0) -> CoefficientModel:
    if np.isscalar(v):
        return CoefficientModel(n, (gaussian(v),) * (n + 1))
    if len(v) != n + 1:
        raise InputError("need one standard deviation per coefficient")
    return CoefficientModel(n, tuple(gaussian(vi) for vi in v))


def exponential_model(n: int) -> CoefficientModel:
    return CoefficientModel(n, (exponential(),) * (n + 1))
