"""Root-finding kernel selection.

The simultaneous-iteration root finder is the hot loop of the simulation
lab (millions of small polynomials per run).  A Cython build of the kernel
is used when available; otherwise a vectorized numpy implementation with
identical semantics takes over.  Set ``ZEROCORR_FORCE_FALLBACK=1`` to pin
the numpy path, e.g. for benchmarking.
"""

import os

import numpy as np

from . import _fallback

if os.environ.get("ZEROCORR_FORCE_FALLBACK"):
    _impl = _fallback
    _impl_name = "fallback"
else:
    try:
        from . import _core as _impl

        _impl_name = "compiled"
    except ImportError:
        _impl = _fallback
        _impl_name = "fallback"


def implementation() -> str:
    """Which kernel backs this process: 'compiled' or 'fallback'."""
    return _impl_name


def aberth_roots(coeffs, max_iter: int = 120, tol: float = 1e-13):
    """All complex roots of a batch of real polynomials.

    ``coeffs`` has shape (batch, n + 1) in ascending power order with a
    nonzero leading coefficient.  Returns ``(roots, residual, converged)``
    where ``roots`` is (batch, n) complex, ``residual`` the per-polynomial
    relative residual max_i |p(r_i)| / (||c|| max(1, |r_i|)^n) and
    ``converged`` a boolean flag per polynomial.
    """
    c = np.ascontiguousarray(coeffs, dtype=np.float64)
    if c.ndim != 2 or c.shape[1] < 2:
        raise ValueError("coeffs must be (batch, n + 1) with n >= 1")
    return _impl.aberth_roots(c, int(max_iter), float(tol))
