"""Coefficient density and model behavior."""

import json
import math

import numpy as np
import pytest
from scipy import integrate

from zerocorr.densities import (
    CoefficientDensity,
    CoefficientModel,
    exponential,
    exponential_model,
    gaussian,
    gaussian_model,
    tabulated,
    uniform,
    uniform_model,
)
from zerocorr.errors import InputError


def _all_kinds():
    grid = np.linspace(-2.0, 2.0, 41)
    vals = np.exp(-np.abs(grid))
    vals /= np.trapezoid(vals, grid)
    return [
        uniform(-1.0, 1.0),
        uniform(0.5, 2.5),
        gaussian(1.0),
        gaussian(0.3),
        exponential(),
        tabulated(grid, vals),
    ]


@pytest.mark.parametrize("dens", _all_kinds(), ids=lambda d: f"{d.kind}")
def test_pdf_normalization(dens):
    lo, hi = dens.support
    lo = max(lo, -60.0)
    hi = min(hi, 60.0)
    pts = list(dens.grid) if dens.kind == "tabulated" else None
    mass, _ = integrate.quad(lambda u: float(dens.pdf(u)), lo, hi, limit=200, points=pts)
    assert mass == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("dens", _all_kinds(), ids=lambda d: f"{d.kind}")
def test_sampling_matches_pdf_mean(dens):
    rng = np.random.default_rng(5)
    draws = dens.sample(rng, 200_000)
    lo, hi = dens.support
    lo = max(lo, -60.0)
    hi = min(hi, 60.0)
    mean, _ = integrate.quad(lambda u: u * float(dens.pdf(u)), lo, hi, limit=200)
    sd = float(np.std(draws))
    assert float(np.mean(draws)) == pytest.approx(mean, abs=5 * sd / math.sqrt(draws.size))


@pytest.mark.parametrize("dens", _all_kinds(), ids=lambda d: f"{d.kind}")
def test_decay_radius_bounds_tail(dens):
    r = dens.decay_radius(1e-10)
    assert np.isfinite(r) and r > 0
    assert float(dens.pdf(r * 1.01)) <= 1e-9
    assert float(dens.pdf(-r * 1.01)) <= 1e-9


def test_json_round_trip():
    for dens in _all_kinds():
        clone = CoefficientDensity.from_json(json.loads(json.dumps(dens.to_json())))
        for u in (-1.3, 0.0, 0.4, 2.2):
            assert float(clone.pdf(u)) == pytest.approx(float(dens.pdf(u)), rel=1e-12)


def test_model_json_round_trip():
    model = CoefficientModel(3, (uniform(), gaussian(2.0), exponential(), gaussian()))
    clone = CoefficientModel.from_json(json.loads(json.dumps(model.to_json())))
    assert clone.degree == 3
    assert [d.kind for d in clone.densities] == ["uniform", "gaussian", "exponential", "gaussian"]


def test_model_kind_labels():
    assert uniform_model(2).kind == "uniform"
    assert gaussian_model(2).kind == "gaussian"
    assert exponential_model(2).kind == "exponential"
    mixed = CoefficientModel(1, (uniform(), gaussian()))
    assert mixed.kind == "mixed"


def test_sample_coefficients_shape_and_support():
    model = exponential_model(4)
    rng = np.random.default_rng(0)
    c = model.sample_coefficients(rng, 100)
    assert c.shape == (100, 5)
    assert np.all(c > 0)


def test_gaussian_model_per_slot_spread():
    model = gaussian_model(2, v=[1.0, 2.0, 3.0])
    assert [d.v for d in model.densities] == [1.0, 2.0, 3.0]


def test_invalid_inputs_raise():
    with pytest.raises(InputError):
        uniform(1.0, 1.0)
    with pytest.raises(InputError):
        gaussian(-1.0)
    with pytest.raises(InputError):
        CoefficientModel(2, (uniform(), uniform()))
    with pytest.raises(InputError):
        tabulated([0.0, 1.0], [1.0, -1.0])
    with pytest.raises(InputError):
        CoefficientDensity.from_json({"kind": "lognormal"})


def test_tabulated_interpolates_and_clamps():
    dens = tabulated([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
    assert float(dens.pdf(0.5)) == pytest.approx(0.5)
    assert float(dens.pdf(-1.0)) == 0.0
    assert float(dens.pdf(3.0)) == 0.0
