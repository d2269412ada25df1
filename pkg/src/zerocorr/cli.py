"""Batch CLI: JSON run configurations in, CSV/JSON artifacts out.

Exit codes: 0 success, 1 validation-suite failure, 2 usage or config
error, 3 numeric backend failure.  All outputs are deterministic functions
of (config, seed) and are byte-identical across worker counts.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .closedforms import prob_real_count
from .densities import CoefficientModel
from .engine import (
    BackendSettings,
    rho_complex_density,
    rho_kl,
    rho_real_density,
)
from .errors import (
    BackendUnavailableError,
    DegenerateProposalError,
    GeometryError,
    ZerocorrError,
)
from .lab import BoxFamily, dump_samples, estimate_density, estimate_mixed_moment, real_count_pmf
from .rngstream import resolve_workers
from .validation import SCENARIOS, validation_report

USAGE_ERROR = 2
BACKEND_ERROR = 3


class ConfigError(Exception):
    pass


def _fmt(x) -> str:
    return repr(float(x))


def _load_config(path: str, overrides) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"--set needs key=value, got {item!r}")
        key, _, raw = item.partition("=")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = cfg
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
        node[parts[-1]] = value
    return cfg


def _model(cfg: dict) -> CoefficientModel:
    if "model" not in cfg:
        raise ConfigError("config needs a 'model' section")
    try:
        return CoefficientModel.from_json(cfg["model"])
    except (KeyError, TypeError, ZerocorrError) as exc:
        raise ConfigError(f"bad model: {exc}") from exc


def _settings(cfg: dict, workers: int) -> BackendSettings:
    backend = cfg.get("backend", "adaptive")
    if backend not in ("adaptive", "monte_carlo", "quasi_random"):
        raise ConfigError(f"unknown backend {backend!r}")
    seed = cfg.get("seed")
    if backend != "adaptive" and seed is None:
        raise ConfigError("stochastic backends need a seed in the config")
    return BackendSettings(
        backend=backend,
        tol=float(cfg.get("tolerance", 1e-8)),
        samples=int(cfg.get("samples", 200_000)),
        seed=None if seed is None else int(seed),
        workers=workers,
    )


def _grid(spec) -> list[float]:
    if spec is None:
        raise ConfigError("missing grid")
    if isinstance(spec, list):
        return [float(v) for v in spec]
    if isinstance(spec, dict) and "points" in spec:
        return [float(v) for v in spec["points"]]
    try:
        start, stop, step = float(spec["start"]), float(spec["stop"]), float(spec["step"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad grid {spec!r}") from exc
    if step <= 0:
        raise ConfigError("grid step must be positive")
    out = []
    v = start
    while v <= stop + 1e-12 * max(1.0, abs(step)):
        out.append(v)
        v += step
    return out


def _open_output(cfg: dict):
    path = cfg.get("output")
    if path is None:
        raise ConfigError("config needs an 'output' path")
    return open(path, "w", encoding="utf-8", newline="")


def _write_json(cfg: dict, payload) -> None:
    with _open_output(cfg) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_density_real(cfg: dict, workers: int) -> int:
    model = _model(cfg)
    settings = _settings(cfg, workers)
    xs = _grid(cfg.get("grid"))
    with _open_output(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "value", "error", "backend", "effort"])
        for x in xs:
            est = rho_real_density(model, x, settings)
            w.writerow([_fmt(x), _fmt(est.value), _fmt(est.error), est.backend, est.effort])
    return 0


def cmd_density_complex(cfg: dict, workers: int) -> int:
    model = _model(cfg)
    settings = _settings(cfg, workers)
    grid = cfg.get("grid") or {}
    res = _grid(grid.get("re"))
    ims = _grid(grid.get("im"))
    if any(v <= 0 for v in ims):
        raise ConfigError("imaginary grid must stay strictly above the real axis")
    with _open_output(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["re", "im", "value", "error"])
        for im in ims:
            for re in res:
                est = rho_complex_density(model, complex(re, im), settings)
                w.writerow([_fmt(re), _fmt(im), _fmt(est.value), _fmt(est.error)])
    return 0


def cmd_correlation(cfg: dict, workers: int) -> int:
    model = _model(cfg)
    settings = _settings(cfg, workers)
    out = []
    for entry in cfg.get("configurations", []):
        x = [float(v) for v in entry.get("x", [])]
        z = [complex(p[0], p[1]) for p in entry.get("z", [])]
        est = rho_kl(model, x, z, settings)
        out.append({
            "configuration": {"x": x, "z": [[p.real, p.imag] for p in z]},
            "value": float(est.value),
            "error": float(est.error),
            "backend": est.backend,
        })
    _write_json(cfg, out)
    return 0


def cmd_real_count(cfg: dict, workers: int) -> int:
    model = _model(cfg)
    settings = _settings(cfg, workers)
    rows = []
    total = 0.0
    for l in range(model.degree // 2 + 1):
        est = prob_real_count(model, l, settings)
        rows.append({
            "real_zeros": model.degree - 2 * l,
            "l": l,
            "value": float(est.value),
            "error": float(est.error),
        })
        total += float(est.value)
    _write_json(cfg, {"probabilities": rows, "sum": total})
    return 0


def cmd_simulate(cfg: dict, workers: int) -> int:
    model = _model(cfg)
    if cfg.get("seed") is None:
        raise ConfigError("simulate needs a seed")
    seed = int(cfg["seed"])
    samples = int(cfg.get("samples", 0))
    if samples <= 0:
        raise ConfigError("simulate needs a positive sample count")
    payload: dict = {"samples": samples, "seed": seed}
    if "density" in cfg:
        dspec = cfg["density"]
        cells = estimate_density(
            model,
            real_cells=[tuple(c) for c in dspec.get("real_cells", [])],
            complex_cells=[tuple(c) for c in dspec.get("complex_cells", [])],
            samples=samples, seed=seed, workers=workers,
        )
        payload["density"] = [
            {"cell": [float(v) for v in c.cell], "kind": c.kind,
             "value": float(c.value), "stderr": float(c.stderr)}
            for c in cells
        ]
    if "moments" in cfg:
        boxes = BoxFamily(
            tuple(tuple(b) for b in cfg["moments"].get("real", [])),
            tuple(tuple(b) for b in cfg["moments"].get("complex", [])),
        )
        est = estimate_mixed_moment(model, boxes, samples=samples, seed=seed, workers=workers)
        payload["moments"] = {
            "value": float(est.value), "stderr": float(est.stderr),
            "samples": int(est.samples), "flagged": int(est.flagged),
        }
    if cfg.get("pmf"):
        pmf = real_count_pmf(model, samples=samples, seed=seed, workers=workers)
        payload["pmf"] = {
            "counts": [int(c) for c in pmf.counts],
            "probabilities": [float(p) for p in pmf.probabilities],
            "stderrs": [float(s) for s in pmf.stderrs],
            "flagged": int(pmf.flagged),
        }
    if "dump" in cfg:
        written = dump_samples(model, samples, seed, cfg["dump"], workers=workers)
        payload["dumped"] = written
    _write_json(cfg, payload)
    return 0


def cmd_validate(cfg: dict, workers: int) -> int:
    names = cfg.get("scenarios", sorted(SCENARIOS))
    records = validation_report(
        names,
        samples=int(cfg.get("samples", 200_000)),
        seed=int(cfg.get("seed", 0)),
        workers=workers,
    )
    payload = {"comparisons": [r.as_dict() for r in records],
               "passed": all(r.passed for r in records)}
    if cfg.get("output"):
        _write_json(cfg, payload)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    for r in records:
        status = "pass" if r.passed else "FAIL"
        print(f"{status} {r.name}: analytic={r.analytic:.6g} empirical={r.empirical:.6g} "
              f"z={r.zscore:.2f}", file=sys.stderr)
    return 0 if payload["passed"] else 1


_COMMANDS = {
    "density-real": cmd_density_real,
    "density-complex": cmd_density_complex,
    "correlation": cmd_correlation,
    "real-count": cmd_real_count,
    "simulate": cmd_simulate,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="zerocorr",
        description="Correlation functions of zeros of random polynomials",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS) + ["list-scenarios"])
    parser.add_argument("config", nargs="?", help="JSON run configuration")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config entry (dotted keys, JSON values)")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: hardware parallelism, "
                             "capped by ZEROCORR_WORKERS)")
    args = parser.parse_args(argv)

    if args.command == "list-scenarios":
        for name in sorted(SCENARIOS):
            print(name)
        return 0
    if args.config is None:
        print("error: a config file is required", file=sys.stderr)
        return USAGE_ERROR

    workers = resolve_workers(args.workers)
    try:
        cfg = _load_config(args.config, args.set)
        return _COMMANDS[args.command](cfg, workers)
    except (ConfigError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (BackendUnavailableError, DegenerateProposalError, GeometryError) as exc:
        print(f"numeric backend failure: {exc}", file=sys.stderr)
        return BACKEND_ERROR
    except ZerocorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
