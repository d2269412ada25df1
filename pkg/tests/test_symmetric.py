"""Symmetric-function substrate: identities and configuration handling."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerocorr.errors import ConjugateClosureError, DimensionError, DomainError
from zerocorr.symmetric import (
    ZeroConfiguration,
    alternating_sigma_product,
    coefficient_map,
    elementary_symmetric,
    elementary_symmetric_values,
    map_matrix_from_sigma,
    real_vandermonde,
    realify_sigma,
    vandermonde_modulus,
)

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
positive = st.floats(min_value=1e-3, max_value=5.0, allow_nan=False)


def configs(max_k=4, max_l=3):
    return st.builds(
        lambda xs, zs: ZeroConfiguration(tuple(xs), tuple(complex(a, b) for a, b in zs)),
        st.lists(finite, max_size=max_k),
        st.lists(st.tuples(finite, positive), max_size=max_l),
    )


@given(st.lists(st.complex_numbers(max_magnitude=4.0, allow_nan=False, allow_infinity=False),
                max_size=7))
@settings(max_examples=200, deadline=None)
def test_elementary_symmetric_matches_polynomial_expansion(points):
    """prod (y - w_i) has coefficients (-1)^i sigma_i in front of y^(m-i)."""
    e = elementary_symmetric_values(points)
    coeffs = np.poly(points) if points else np.array([1.0 + 0j])
    m = len(points)
    signs = (-1.0) ** np.arange(m + 1)
    np.testing.assert_allclose(signs * e, np.asarray(coeffs, dtype=complex),
                               rtol=1e-9, atol=1e-9)


@given(st.lists(st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
                max_size=6))
@settings(max_examples=200, deadline=None)
def test_alternating_sum_is_product_at_one(points):
    lhs = alternating_sigma_product(points)
    rhs = np.prod([1.0 - w for w in points]) if points else 1.0
    assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(rhs))


@given(configs())
@settings(max_examples=150, deadline=None)
def test_determinant_identity(cfg):
    """|det V| of the split power matrix equals 2^(-l) v_m."""
    if cfg.m == 0:
        return
    V = real_vandermonde(cfg).matrix
    lhs = abs(np.linalg.det(V))
    rhs = 2.0 ** (-cfg.l) * vandermonde_modulus(cfg.full_tuple())
    # absolute floor scaled by the Hadamard bound: a singular V of large
    # entries only cancels to rounding noise at that scale
    hadamard = float(np.prod(np.linalg.norm(V, axis=1))) if cfg.m else 1.0
    assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-10 * (1.0 + hadamard))


@given(configs())
@settings(max_examples=150, deadline=None)
def test_sigma_of_configuration_is_real(cfg):
    prof = elementary_symmetric(cfg)
    assert prof.sigma.dtype == np.float64
    assert prof.m == cfg.m
    # sigma_1 is the sum of the points; conjugates cancel the imaginary parts
    expected = sum(cfg.real_points) + 2.0 * sum(z.real for z in cfg.complex_points)
    if cfg.m >= 1:
        assert prof.sigma_at(1) == pytest.approx(expected, rel=1e-9, abs=1e-9)
    assert prof.sigma_at(-1) == 0.0
    assert prof.sigma_at(cfg.m + 1) == 0.0
    assert prof.sigma_at(0) == 1.0


@given(configs(max_k=3, max_l=2), st.integers(min_value=0, max_value=4))
@settings(max_examples=150, deadline=None)
def test_coefficient_map_block_is_unit_triangular(cfg, extra):
    n = cfg.m + extra
    cmap = coefficient_map(cfg, n)
    assert cmap.matrix.shape == (n + 1, n - cfg.m + 1)
    block = cmap.matrix[cfg.m:, :]
    np.testing.assert_allclose(np.diag(block), 1.0)
    assert np.allclose(np.tril(block, -1), 0.0)


def test_map_matrix_row_content():
    # single real point x: rows implement t_{j-1} - x t_j convolution
    sigma = np.array([1.0, 0.5])  # point x = 0.5
    M = map_matrix_from_sigma(sigma, 2)
    np.testing.assert_allclose(M, [[-0.5, 0.0], [1.0, -0.5], [0.0, 1.0]])


def test_vandermonde_modulus_zero_on_coincidence():
    assert vandermonde_modulus([1.0, 1.0, 2.0]) == 0.0
    assert vandermonde_modulus([1.0, 3.0]) == 2.0
    assert vandermonde_modulus([]) == 1.0


def test_full_tuple_ordering():
    cfg = ZeroConfiguration((0.5, -1.0), (1j, 2 + 3j))
    np.testing.assert_allclose(
        cfg.full_tuple(),
        [0.5, -1.0, 1j, -1j, 2 + 3j, 2 - 3j],
    )
    assert (cfg.k, cfg.l, cfg.m) == (2, 2, 6)


def test_lower_half_plane_point_rejected():
    with pytest.raises(DomainError):
        ZeroConfiguration((), (1 - 2j,))
    with pytest.raises(DomainError):
        ZeroConfiguration((), (1.0 + 0j,))


def test_realify_rejects_unclosed_tuple():
    e = elementary_symmetric_values([1j, 2.0])  # 1j without its conjugate
    with pytest.raises(ConjugateClosureError):
        realify_sigma(e)


def test_configuration_larger_than_degree_rejected():
    cfg = ZeroConfiguration((0.0, 1.0), (1j,))
    with pytest.raises(DimensionError):
        coefficient_map(cfg, 3)
