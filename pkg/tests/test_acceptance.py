"""Acceptance gate: twelve numbered criteria, one printed verdict line each.

Each test prints ``criterion NN <name>: PASS|FAIL`` through the disabled
capture context so the verdicts are visible in any pytest run.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy import integrate as sciint

from zerocorr.closedforms import joint_density, joint_density_quadrature, prob_real_count
from zerocorr.cli import main as cli_main
from zerocorr.densities import exponential_model, gaussian_model, uniform_model
from zerocorr.engine import (
    BackendSettings,
    integrate_correlation,
    rho_complex_density,
    rho_kl,
    rho_real_density,
)
from zerocorr.lab import (
    BoxFamily,
    dump_samples,
    estimate_density,
    estimate_mixed_moment,
    real_count_pmf,
)
from zerocorr.symmetric import (
    ZeroConfiguration,
    alternating_sigma_product,
    elementary_symmetric_values,
    real_vandermonde,
    vandermonde_modulus,
)

ADAPTIVE = BackendSettings(backend="adaptive", tol=1e-9)
GRID = (-2.0, -1.0, 0.0, 1.0, 2.0)


def _verdict(capsys, num, name, ok, detail=""):
    with capsys.disabled():
        print(f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, f"criterion {num:02d} {name} failed: {detail}"


def _random_full_config(rng, n, negative=False):
    l = int(rng.integers(0, n // 2 + 1))
    k = n - 2 * l
    lo, hi = (-2.0, -0.1) if negative else (-2.0, 2.0)
    xs = tuple(rng.uniform(lo, hi, k))
    zs = tuple(complex(rng.uniform(lo, hi), rng.uniform(0.1, 2.0)) for _ in range(l))
    return ZeroConfiguration(xs, zs)


def test_criterion_01_cauchy_oracle(capsys):
    model = gaussian_model(1)
    t0 = time.perf_counter()
    worst = 0.0
    for x in GRID:
        est = rho_real_density(model, x, ADAPTIVE)
        exact = 1.0 / (math.pi * (1.0 + x * x))
        worst = max(worst, abs(est.value - exact) / exact)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 1.0
    _verdict(capsys, 1, "gaussian n=1 density is Cauchy", ok,
             f"max rel err {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_uniform_oracle(capsys):
    model = uniform_model(1)
    worst = 0.0
    for x in GRID:
        est = rho_real_density(model, x, ADAPTIVE)
        exact = 0.25 / max(1.0, abs(x)) ** 2
        worst = max(worst, abs(est.value - exact) / exact)

    def rho(th):
        x = math.tan(th)
        return rho_real_density(model, x, ADAPTIVE).value * (1.0 + x * x)

    mass, _ = sciint.quad(rho, -0.5 * math.pi, 0.5 * math.pi,
                          epsrel=1e-6, limit=200, points=[-math.pi / 4, math.pi / 4])
    ok = worst < 1e-6 and abs(mass - 1.0) < 1e-4
    _verdict(capsys, 2, "uniform n=1 density and unit mass", ok,
             f"max rel err {worst:.2e}, mass {mass:.6f}")


def test_criterion_03_exponential_oracle(capsys):
    model = exponential_model(1)
    worst = 0.0
    positive_mass = 0.0
    for x in GRID:
        est = rho_real_density(model, x, ADAPTIVE)
        if x <= 0:
            exact = (1.0 - x) ** -2
            worst = max(worst, abs(est.value - exact) / exact)
        else:
            positive_mass = max(positive_mass, est.value)
    ok = worst < 1e-8 and positive_mass == 0.0
    _verdict(capsys, 3, "exponential n=1 density", ok,
             f"max rel err {worst:.2e}, mass on x>0 {positive_mass}")


def test_criterion_04_closed_forms_match_quadrature(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    for factory in (uniform_model, gaussian_model, exponential_model):
        negative = factory is exponential_model
        for n in (2, 3, 4):
            model = factory(n)
            rng = np.random.default_rng(1000 * n + len(factory.__name__))
            for _ in range(20):
                cfg = _random_full_config(rng, n, negative=negative)
                cf = joint_density(model, cfg).value
                quad = joint_density_quadrature(model, cfg)
                worst = max(worst, abs(cf - quad) / max(abs(quad), 1e-12))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and elapsed < 10.0
    _verdict(capsys, 4, "closed forms match 1-D quadrature", ok,
             f"max rel err {worst:.2e}, {elapsed:.1f}s")


def test_criterion_05_complex_density_path_consistency(capsys):
    model = gaussian_model(3)
    settings = BackendSettings(backend="adaptive", tol=1e-8)
    worst = 0.0
    for re in (-0.5, 0.0, 0.7):
        for im in (0.3, 0.8, 1.4):
            z = complex(re, im)
            direct = rho_complex_density(model, z, settings)
            generic = rho_kl(model, [], [z], settings)
            worst = max(worst, abs(direct.value - generic.value) / generic.value)
    ok = worst < 1e-6
    _verdict(capsys, 5, "specialized vs generic complex density", ok,
             f"max rel err {worst:.2e}")


def test_criterion_06_conservation(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    detail = []
    for factory, tag, samples in (
        (gaussian_model, "gaussian", 500_000),
        (uniform_model, "uniform", 12_000_000),
    ):
        for n in (2, 3):
            model = factory(n)
            real = integrate_correlation(model, [None], [], samples, 61, workers=4)
            cplx = integrate_correlation(model, [], [None], samples // 6, 62, workers=4)
            total = real.value + 2.0 * cplx.value
            rel = abs(total - n) / n
            worst = max(worst, rel)
            detail.append(f"{tag} n={n}: {total:.4f}")
    elapsed = time.perf_counter() - t0
    ok = worst < 0.01 and elapsed < 120.0
    _verdict(capsys, 6, "expected zero count is conserved", ok,
             f"{'; '.join(detail)}; {elapsed:.0f}s")


def test_criterion_07_monte_carlo_cross_validation(capsys):
    t0 = time.perf_counter()
    model = gaussian_model(5)
    b_real = (0.0, 1.0)
    b_cplx = (0.0, 1.0, 0.2, 1.2)

    eng_real = integrate_correlation(model, [b_real], [], 400_000, 71)
    eng_cplx = integrate_correlation(model, [], [b_cplx], 400_000, 72)
    eng_mixed = integrate_correlation(model, [b_real], [b_cplx], 400_000, 73)

    cells = estimate_density(model, real_cells=[b_real], complex_cells=[b_cplx],
                             samples=100_000, seed=74)
    moment = estimate_mixed_moment(model, BoxFamily((b_real,), (b_cplx,)),
                                   samples=100_000, seed=74)

    # cell measures are 1, so intensity equals expected count
    zs = [
        abs(eng_real.value - cells[0].value)
        / math.hypot(eng_real.error, cells[0].stderr),
        abs(eng_cplx.value - cells[1].value)
        / math.hypot(eng_cplx.error, cells[1].stderr),
        abs(eng_mixed.value - moment.value)
        / math.hypot(eng_mixed.error, moment.stderr),
    ]
    elapsed = time.perf_counter() - t0
    ok = max(zs) < 3.0 and elapsed < 120.0
    _verdict(capsys, 7, "simulation matches correlation integrals", ok,
             f"z-scores {', '.join(f'{z:.2f}' for z in zs)}; {elapsed:.0f}s")


def test_criterion_08_real_count_pmf(capsys):
    worst_z = 0.0
    worst_mass = 0.0
    settings = BackendSettings(backend="adaptive", tol=1e-7)
    for factory, tag in ((uniform_model, "uniform"), (gaussian_model, "gaussian"),
                         (exponential_model, "exponential")):
        model = factory(2)
        pmf = real_count_pmf(model, samples=1_000_000, seed=81, workers=4)
        total = 0.0
        for idx, count in enumerate(pmf.counts):
            l = (2 - count) // 2
            analytic = prob_real_count(model, l, settings).value
            total += analytic
            se = max(pmf.stderrs[idx], 1e-12)
            worst_z = max(worst_z, abs(analytic - pmf.probabilities[idx]) / se)
        worst_mass = max(worst_mass, abs(total - 1.0))
    ok = worst_z < 3.0 and worst_mass < 1e-3
    _verdict(capsys, 8, "analytic n=2 count pmf matches simulation", ok,
             f"max z {worst_z:.2f}, mass defect {worst_mass:.2e}")


def test_criterion_09_determinant_identity(capsys):
    rng = np.random.default_rng(91)
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 9))
        cfg = _random_full_config(rng, m)
        V = real_vandermonde(cfg).matrix
        lhs = abs(np.linalg.det(V))
        rhs = 2.0 ** (-cfg.l) * vandermonde_modulus(cfg.full_tuple())
        worst = max(worst, abs(lhs - rhs) / max(rhs, 1e-12))
    ok = worst < 1e-10
    _verdict(capsys, 9, "split Vandermonde determinant identity", ok,
             f"max rel err {worst:.2e}")


def test_criterion_10_product_identity(capsys):
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(0, 9))
        pts = rng.normal(size=m) + 1j * rng.normal(size=m)
        lhs = alternating_sigma_product(pts)
        rhs = np.prod(1.0 - pts) if m else 1.0
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-12))
    ok = worst < 1e-12
    _verdict(capsys, 10, "alternating sigma sum is product at one", ok,
             f"max rel err {worst:.2e}")


def test_criterion_11_root_finder_quality(capsys, tmp_path):
    model = gaussian_model(20)
    path = tmp_path / "roots.jsonl"
    n_samples = 1000
    dump_samples(model, n_samples, 111, path)
    flagged = 0
    parity_ok = True
    worst_resid = 0.0
    for line in path.read_text().splitlines():
        rec = json.loads(line)
        if rec["flagged"]:
            flagged += 1
            continue
        if len(rec["real_roots"]) + 2 * len(rec["complex_pairs"]) != 20:
            parity_ok = False
        worst_resid = max(worst_resid, rec["residual"])
    rate = flagged / n_samples
    ok = parity_ok and rate < 0.001 and worst_resid < 1e-8
    _verdict(capsys, 11, "degree-20 root finding quality", ok,
             f"flag rate {rate:.4f}, max residual {worst_resid:.2e}")


def test_criterion_12_determinism(capsys, tmp_path):
    def run(tag, workers):
        out = tmp_path / f"sim-{tag}.json"
        dump = tmp_path / f"dump-{tag}.jsonl"
        cfg = {
            "model": {"degree": 4, "densities": {"kind": "gaussian", "v": 1.0}},
            "samples": 20_000,
            "seed": 121,
            "pmf": True,
            "density": {"real_cells": [[-1.0, 1.0]], "complex_cells": [[0.0, 1.0, 0.1, 1.1]]},
            "moments": {"real": [[-1.0, 1.0]]},
            "dump": str(dump),
            "output": str(out),
        }
        cfg_path = tmp_path / f"cfg-{tag}.json"
        cfg_path.write_text(json.dumps(cfg))
        code = cli_main(["simulate", str(cfg_path), "--workers", str(workers)])
        return code, out.read_bytes(), dump.read_bytes()

    runs = [run("a", 1), run("b", 4), run("c", 1)]
    cli_same = all(c == 0 for c, _, _ in runs) and all(
        r[1] == runs[0][1] and r[2] == runs[0][2] for r in runs[1:]
    )

    model = gaussian_model(4)
    mc = [
        rho_real_density(model, 0.3, BackendSettings(
            backend="monte_carlo", samples=50_000, seed=122, workers=w))
        for w in (1, 4, 1)
    ]
    mc_same = all(e.value == mc[0].value and e.error == mc[0].error for e in mc[1:])

    corr = [integrate_correlation(model, [(0.0, 1.0)], [], 50_000, 123, workers=w)
            for w in (1, 4)]
    corr_same = corr[0].value == corr[1].value

    ok = cli_same and mc_same and corr_same
    _verdict(capsys, 12, "byte-identical stochastic outputs", ok,
             f"cli {cli_same}, backend {mc_same}, correlation {corr_same}")
