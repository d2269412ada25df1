"""Analytic-vs-empirical cross validation scenarios.

Each scenario pits quantities from the integration engine / closed forms
against independent simulation estimates and reports per-comparison
z-scores.  The registry backs the ``validate`` CLI command.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .closedforms import prob_real_count
from .densities import CoefficientModel, exponential_model, gaussian_model, uniform_model
from .engine import BackendSettings, integrate_correlation, rho_real_density
from .errors import InputError
from .lab import estimate_density, real_count_pmf

Z_THRESHOLD = 3.0


@dataclass(frozen=True)
class ComparisonRecord:
    name: str
    analytic: float
    analytic_error: float
    empirical: float
    empirical_error: float
    zscore: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def compare(name: str, analytic: float, analytic_error: float,
            empirical: float, empirical_error: float,
            threshold: float = Z_THRESHOLD) -> ComparisonRecord:
    """Build a comparison record; fails when the z-score exceeds threshold."""
    denom = math.sqrt(analytic_error**2 + empirical_error**2)
    z = float(analytic - empirical) / max(denom, 1e-300)
    return ComparisonRecord(name, float(analytic), float(analytic_error),
                            float(empirical), float(empirical_error),
                            z, bool(abs(z) < threshold))


def _density_scenario(tag: str, model: CoefficientModel, exact, cell,
                      samples: int, seed: int, workers: int):
    """Point value vs exact formula, cell intensity engine-vs-lab, trivial pmf."""
    records = []
    x0 = 0.5 * (cell[0] + cell[1])
    est = rho_real_density(model, x0, BackendSettings(backend="adaptive", tol=1e-9))
    records.append(compare(f"{tag}/point-density", est.value, est.error, exact(x0), 1e-12))

    eng = integrate_correlation(model, [cell], [], samples, seed + 1, workers)
    width = cell[1] - cell[0]
    emp = estimate_density(model, real_cells=[cell], samples=samples, seed=seed,
                           workers=workers)[0]
    records.append(compare(f"{tag}/cell-intensity", eng.value / width, eng.error / width,
                           emp.value, emp.stderr))

    pmf = real_count_pmf(model, samples=min(samples, 50_000), seed=seed + 2, workers=workers)
    total = sum(pmf.probabilities)
    records.append(compare(f"{tag}/pmf-normalization", 1.0, 1e-12, total, 1e-12))
    return records


def _pmf_scenario(tag: str, model: CoefficientModel, samples: int, seed: int, workers: int):
    records = []
    pmf = real_count_pmf(model, samples=samples, seed=seed, workers=workers)
    n = model.degree
    for idx, count in enumerate(pmf.counts):
        l = (n - count) // 2
        analytic = prob_real_count(model, l, BackendSettings(tol=1e-7))
        records.append(compare(f"{tag}/P[{count} real]", analytic.value, analytic.error,
                               pmf.probabilities[idx], pmf.stderrs[idx]))
    return records


SCENARIOS = {
    "n1-gaussian": lambda s, seed, w: _density_scenario(
        "n1-gaussian", gaussian_model(1), lambda x: 1.0 / (math.pi * (1 + x * x)),
        (-0.5, 0.5), s, seed, w),
    "n1-uniform": lambda s, seed, w: _density_scenario(
        "n1-uniform", uniform_model(1), lambda x: 0.25 / max(1.0, abs(x)) ** 2,
        (-0.5, 0.5), s, seed, w),
    "n1-exponential": lambda s, seed, w: _density_scenario(
        "n1-exponential", exponential_model(1), lambda x: (1.0 - x) ** -2 if x <= 0 else 0.0,
        (-1.5, -0.5), s, seed, w),
    "n2-gaussian-pmf": lambda s, seed, w: _pmf_scenario(
        "n2-gaussian-pmf", gaussian_model(2), s, seed, w),
    "n2-uniform-pmf": lambda s, seed, w: _pmf_scenario(
        "n2-uniform-pmf", uniform_model(2), s, seed, w),
    "n2-exponential-pmf": lambda s, seed, w: _pmf_scenario(
        "n2-exponential-pmf", exponential_model(2), s, seed, w),
}


def validation_report(scenarios, samples: int = 200_000, seed: int = 0,
                      workers: int = 1) -> list[ComparisonRecord]:
    """Run named scenarios and collect their comparison records."""
    records = []
    for name in scenarios:
        if name not in SCENARIOS:
            raise InputError(f"unknown scenario {name!r}; known: {sorted(SCENARIOS)}")
        records.extend(SCENARIOS[name](samples, seed, workers))
    return records
