"""Root-finding kernels: compiled extension vs pure-numpy fallback."""

import numpy as np
import pytest

from zerocorr import _kernels
from zerocorr._kernels import _fallback

def _with_defaults(raw, name):
    def run(coeffs, max_iter=120, tol=1e-13):
        return raw(np.ascontiguousarray(coeffs, dtype=float), max_iter, tol)

    run.__name__ = name
    return run


IMPLS = [_with_defaults(_fallback.aberth_roots, "fallback")]
if _kernels.implementation() == "compiled":
    from zerocorr._kernels import _core

    IMPLS.append(_with_defaults(_core.aberth_roots, "core"))


def _sorted(roots):
    return np.sort_complex(np.asarray(roots))


def _assert_same_multiset(got, expected, atol):
    """Match roots pairwise regardless of ordering ties."""
    from scipy.optimize import linear_sum_assignment

    got = np.asarray(got)
    expected = np.asarray(expected, dtype=complex)
    cost = np.abs(got[:, None] - expected[None, :])
    rows, cols = linear_sum_assignment(cost)
    assert cost[rows, cols].max() < atol


@pytest.mark.parametrize("aberth", IMPLS, ids=lambda f: f.__name__)
def test_known_cubic(aberth):
    # (z - 1)(z - 2)(z - 3) = z^3 - 6 z^2 + 11 z - 6
    coeffs = np.array([[-6.0, 11.0, -6.0, 1.0]])
    roots, resid, conv = aberth(coeffs)
    np.testing.assert_allclose(_sorted(roots[0]), [1.0, 2.0, 3.0], atol=1e-10)
    assert resid[0] < 1e-12
    assert conv.all()


@pytest.mark.parametrize("aberth", IMPLS, ids=lambda f: f.__name__)
def test_batch_matches_numpy_roots(aberth):
    rng = np.random.default_rng(17)
    coeffs = rng.normal(size=(50, 13))  # degree 12
    roots, resid, conv = aberth(coeffs)
    assert conv.all()
    assert resid.max() < 1e-10
    for c, r in zip(coeffs, roots):
        _assert_same_multiset(r, np.roots(c[::-1]), atol=1e-7)


@pytest.mark.parametrize("aberth", IMPLS, ids=lambda f: f.__name__)
def test_degree_one(aberth):
    roots, resid, conv = aberth(np.array([[3.0, -1.5]]))
    np.testing.assert_allclose(roots[0], [2.0], atol=1e-12)
    assert conv.all()


@pytest.mark.parametrize("aberth", IMPLS, ids=lambda f: f.__name__)
def test_conjugate_pairs_survive(aberth):
    # (z^2 + 1)(z + 2) = z^3 + 2 z^2 + z + 2
    roots, _, conv = aberth(np.array([[2.0, 1.0, 2.0, 1.0]]))
    assert conv.all()
    _assert_same_multiset(roots[0], [-2.0, -1j, 1j], atol=1e-10)


def test_implementations_agree():
    if len(IMPLS) < 2:
        pytest.skip("compiled kernel unavailable")
    rng = np.random.default_rng(3)
    coeffs = rng.normal(size=(30, 21))  # degree 20
    r_fb, resid_fb, conv_fb = IMPLS[0](coeffs)
    r_c, resid_c, conv_c = IMPLS[1](coeffs)
    assert conv_fb.all() and conv_c.all()
    for a, b in zip(r_fb, r_c):
        _assert_same_multiset(a, b, atol=1e-8)
    assert resid_fb.max() < 1e-9 and resid_c.max() < 1e-9


def test_selection_reports_backend():
    assert _kernels.implementation() in ("compiled", "fallback")
    assert callable(_kernels.aberth_roots)
