"""Pure-numpy root-finding kernel, batched over polynomials.

Same contract as the compiled core.  Updates are Jacobi-style (all roots of
a polynomial move at once) which vectorizes well; the compiled core uses
in-place Gauss-Seidel updates.  Both finish with Newton polishing, so the
returned roots agree to polish accuracy.
"""

import numpy as np

_BLOCK = 4096


def _horner_pair(c, x):
    """Evaluate p and p' at (batch, n) points; c ascending, shape (batch, n+1)."""
    n = c.shape[1] - 1
    p = np.full_like(x, 0.0) + c[:, n][:, None]
    dp = np.zeros_like(x)
    for j in range(n - 1, -1, -1):
        dp = dp * x + p
        p = p * x + c[:, j][:, None]
    return p, dp


def _aberth_block(c, max_iter, tol):
    S, n1 = c.shape
    n = n1 - 1
    scale = np.max(np.abs(c), axis=1, keepdims=True)
    c = c / scale

    r0 = (np.abs(c[:, 0]) / np.abs(c[:, n])) ** (1.0 / n)
    r0 = np.clip(r0, 1e-6, 1e6)
    angles = 2.0 * np.pi * (np.arange(n) + 0.5) / n + 0.7
    x = r0[:, None] * np.exp(1j * angles)[None, :]

    active = np.ones(S, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        xa = x[idx]
        ca = c[idx]
        p, dp = _horner_pair(ca, xa)
        w = p / np.where(dp == 0, 1e-300, dp)
        diff = xa[:, :, None] - xa[:, None, :]
        np.einsum("sii->si", diff)[:] = 1.0
        inv = 1.0 / diff
        np.einsum("sii->si", inv)[:] = 0.0
        s = inv.sum(axis=2)
        denom = 1.0 - w * s
        delta = w / np.where(denom == 0, 1e-300, denom)
        xa = xa - delta
        x[idx] = xa
        done = np.max(np.abs(delta) / (1.0 + np.abs(xa)), axis=1) <= tol
        active[idx[done]] = False

    for _ in range(2):
        p, dp = _horner_pair(c, x)
        x = x - p / np.where(dp == 0, 1e-300, dp)

    p, _ = _horner_pair(c, x)
    norm = np.sqrt(np.sum(c * c, axis=1))
    grow = np.maximum(1.0, np.abs(x)) ** n
    resid = np.max(np.abs(p) / (norm[:, None] * grow), axis=1)
    return x, resid, ~active


def aberth_roots(coeffs, max_iter, tol):
    S, n1 = coeffs.shape
    n = n1 - 1
    roots = np.empty((S, n), dtype=np.complex128)
    resid = np.empty(S)
    conv = np.empty(S, dtype=bool)
    for start in range(0, S, _BLOCK):
        stop = min(start + _BLOCK, S)
        roots[start:stop], resid[start:stop], conv[start:stop] = _aberth_block(
            coeffs[start:stop], max_iter, tol
        )
    return roots, resid, conv
