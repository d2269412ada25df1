"""Symmetric-function substrate: configurations, sigma vectors, Vandermonde.

Conventions used throughout the package:

* a configuration lists its k real points first, then each upper-half-plane
  point immediately followed by its conjugate, so the full tuple has the
  fixed order (x_1..x_k, z_1, conj z_1, ..., z_l, conj z_l);
* sigma_0 = 1 and sigma_i = 0 for i < 0 or i > m;
* the Vandermonde modulus v_m is the product of pairwise absolute
  differences, never a determinant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConjugateClosureError, DimensionError, DomainError

IMAG_RESIDUE_TOL = 1e-9


def elementary_symmetric_values(points) -> np.ndarray:
    """All e_0..e_m of a complex tuple by the incremental product recurrence."""
    w = np.asarray(points, dtype=complex)
    m = w.size
    e = np.zeros(m + 1, dtype=complex)
    e[0] = 1.0
    for r in range(m):
        e[1 : r + 2] = e[1 : r + 2] + w[r] * e[0 : r + 1]
    return e


def vandermonde_modulus(points) -> float:
    """Product of |w_i - w_j| over i < j; zero iff two entries coincide."""
    w = np.asarray(points, dtype=complex)
    v = 1.0
    for i in range(w.size):
        for j in range(i + 1, w.size):
            v *= abs(w[i] - w[j])
    return v


def alternating_sigma_product(points) -> complex:
    """Sum of (-1)^i sigma_i, which equals the product of (1 - w_i)."""
    e = elementary_symmetric_values(points)
    signs = (-1.0) ** np.arange(e.size)
    return complex(np.sum(signs * e))


@dataclass(frozen=True)
class ZeroConfiguration:
    """k real points and l strictly-upper-half-plane points."""

    real_points: tuple
    complex_points: tuple

    def __post_init__(self):
        object.__setattr__(self, "real_points", tuple(float(x) for x in self.real_points))
        object.__setattr__(self, "complex_points", tuple(complex(z) for z in self.complex_points))
        for z in self.complex_points:
            if not z.imag > 0:
                raise DomainError(f"complex point {z} must have positive imaginary part")

    @property
    def k(self) -> int:
        return len(self.real_points)

    @property
    def l(self) -> int:
        return len(self.complex_points)

    @property
    def m(self) -> int:
        return self.k + 2 * self.l

    def full_tuple(self) -> np.ndarray:
        """Conjugate-closed tuple (x..., z_1, conj z_1, ..., z_l, conj z_l)."""
        out = np.empty(self.m, dtype=complex)
        out[: self.k] = self.real_points
        for i, z in enumerate(self.complex_points):
            out[self.k + 2 * i] = z
            out[self.k + 2 * i + 1] = z.conjugate()
        return out


@dataclass(frozen=True)
class SymmetricProfile:
    """sigma_0..sigma_m of a configuration plus its Vandermonde modulus."""

    sigma: np.ndarray
    vandermonde: float

    @property
    def m(self) -> int:
        return self.sigma.size - 1

    def sigma_at(self, i: int) -> float:
        """sigma_i with the out-of-range-zero convention."""
        if i < 0 or i > self.m:
            return 0.0
        return float(self.sigma[i])


def realify_sigma(e: np.ndarray) -> np.ndarray:
    """Drop imaginary residue of analytically-real sigma values, or complain."""
    resid = np.abs(e.imag)
    allowed = IMAG_RESIDUE_TOL * (1.0 + np.abs(e))
    if np.any(resid > allowed):
        bad = int(np.argmax(resid - allowed))
        raise ConjugateClosureError(
            f"sigma_{bad} has imaginary residue {e.imag[bad]:.3e}; tuple is not conjugate-closed"
        )
    return e.real.copy()


def elementary_symmetric(cfg: ZeroConfiguration) -> SymmetricProfile:
    """Sigma vector and Vandermonde modulus of the full tuple."""
    w = cfg.full_tuple()
    e = elementary_symmetric_values(w)
    return SymmetricProfile(sigma=realify_sigma(e), vandermonde=vandermonde_modulus(w))


@dataclass(frozen=True)
class CoefficientMap:
    """Linear map from integration variables t_0..t_{n-m} to coefficient slots.

    Row i, column j holds (-1)^(m-i+j) sigma_(m-i+j).  The square block of
    rows m..n is unit upper-triangular in (row - m, column) indexing, which
    is what makes the change of variables volume preserving and gives cheap
    per-coordinate truncation bounds.
    """

    matrix: np.ndarray
    m: int
    n: int

    @property
    def dimension(self) -> int:
        return self.n - self.m + 1


def coefficient_map(cfg: ZeroConfiguration, n: int) -> CoefficientMap:
    m = cfg.m
    if m > n:
        raise DimensionError(f"configuration size {m} exceeds degree {n}")
    profile = elementary_symmetric(cfg)
    return CoefficientMap(matrix=map_matrix_from_sigma(profile.sigma, n), m=m, n=n)


def map_matrix_from_sigma(sigma: np.ndarray, n: int) -> np.ndarray:
    """Dense (n+1) x (n-m+1) matrix with entries (-1)^(m-i+j) sigma_(m-i+j)."""
    m = sigma.size - 1
    d = n - m + 1
    M = np.zeros((n + 1, d))
    for i in range(n + 1):
        lo = max(0, i - m)
        hi = min(d - 1, i)
        for j in range(lo, hi + 1):
            idx = m - i + j
            M[i, j] = (-1.0) ** idx * sigma[idx]
    return M


@dataclass(frozen=True)
class RealVandermondeMatrix:
    """Square m x m matrix of point powers, real rows split per complex point.

    Each real point contributes the row (1, x, ..., x^(m-1)); each complex
    point contributes the real-part and imaginary-part rows of the same
    powers.  Powers run over 0..m-1 so the matrix is square; its determinant
    modulus equals 2^(-l) v_m of the full tuple.
    """

    matrix: np.ndarray
    k: int
    l: int


def real_vandermonde(cfg: ZeroConfiguration) -> RealVandermondeMatrix:
    m = cfg.m
    powers = np.arange(m)
    rows = []
    for x in cfg.real_points:
        rows.append(np.asarray(x, dtype=float) ** powers)
    for z in cfg.complex_points:
        zp = np.asarray(z, dtype=complex) ** powers
        rows.append(zp.real)
        rows.append(zp.imag)
    return RealVandermondeMatrix(matrix=np.vstack(rows), k=cfg.k, l=cfg.l)
