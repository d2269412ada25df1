"""Simulation lab: sample polynomials, find and classify their roots,
and estimate zero-count statistics for comparison with the analytic side.

Samples are processed in fixed-size chunks with per-chunk counter-based
random streams, so every estimate is a deterministic function of
(model, seed, sample count) alone, independent of worker count.  Samples
whose root finding fails a quality gate are flagged, excluded from
estimators and reported, never silently resampled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .densities import CoefficientModel
from .errors import InputError
from .rngstream import RunningMoments, chunk_plan, chunk_rng, map_chunks

DEFAULT_REAL_TOL = 1e-9
DEFAULT_RESID_TOL = 1e-8


@dataclass(frozen=True)
class ZeroSample:
    """One sampled polynomial with its classified root multiset."""

    coefficients: tuple
    real_roots: tuple
    complex_pairs: tuple  # upper-half-plane representatives
    max_residual: float
    flagged: bool

    def to_json_line(self) -> str:
        rec = {
            "coefficients": list(self.coefficients),
            "real_roots": list(self.real_roots),
            "complex_pairs": [[z.real, z.imag] for z in self.complex_pairs],
            "residual": self.max_residual,
            "flagged": self.flagged,
        }
        return json.dumps(rec)


@dataclass(frozen=True)
class BoxFamily:
    """Pairwise disjoint real intervals and upper-half-plane rectangles."""

    real_intervals: tuple = ()
    complex_rects: tuple = ()  # (re0, re1, im0, im1)

    def __post_init__(self):
        ivs = [tuple(map(float, iv)) for iv in self.real_intervals]
        rects = [tuple(map(float, r)) for r in self.complex_rects]
        object.__setattr__(self, "real_intervals", tuple(ivs))
        object.__setattr__(self, "complex_rects", tuple(rects))
        for a, b in ivs:
            if not b > a:
                raise InputError(f"empty interval ({a}, {b})")
        for r0, r1, i0, i1 in rects:
            if not (r1 > r0 and i1 > i0):
                raise InputError("empty rectangle")
            if not i0 > 0:
                raise InputError("rectangles must lie strictly above the real axis")
        for i in range(len(ivs)):
            for j in range(i + 1, len(ivs)):
                if ivs[i][0] < ivs[j][1] and ivs[j][0] < ivs[i][1]:
                    raise InputError(f"overlapping intervals {ivs[i]} and {ivs[j]}")
        for i in range(len(rects)):
            for j in range(i + 1, len(rects)):
                a, b = rects[i], rects[j]
                if a[0] < b[1] and b[0] < a[1] and a[2] < b[3] and b[2] < a[3]:
                    raise InputError(f"overlapping rectangles {a} and {b}")


# ---------------------------------------------------------------------------
# root finding and classification


def find_roots(coefficients, max_iter: int = 200, tol: float = 1e-14):
    """All complex roots of one real polynomial (ascending coefficients).

    Returns (roots, relative residual, converged flag).
    """
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise InputError("need at least a degree-1 polynomial")
    if abs(c[-1]) < 1e-300:
        raise InputError("leading coefficient is numerically zero")
    roots, resid, conv = _kernels.aberth_roots(c[None, :], max_iter, tol)
    return roots[0], float(resid[0]), bool(conv[0])


@dataclass(frozen=True)
class Classification:
    real_roots: tuple
    complex_pairs: tuple
    flagged: bool
    reclassified: int


def classify_roots(roots, tau: float = DEFAULT_REAL_TOL) -> Classification:
    """Split a conjugate-symmetric multiset into real roots and pairs.

    A root is real when |Im| <= tau * (1 + |Re|).  If the real count breaks
    the parity invariant, the root nearest the classification boundary is
    flipped and the event counted.  Non-real roots are matched greedily to
    conjugates; an unmatched root flags the sample.
    """
    roots = np.asarray(roots, dtype=complex)
    n = roots.size
    margin = np.abs(roots.imag) - tau * (1.0 + np.abs(roots.real))
    real_mask = margin <= 0
    reclassified = 0
    if (n - int(real_mask.sum())) % 2 == 1:
        j = int(np.argmin(np.abs(margin)))
        real_mask[j] = not real_mask[j]
        reclassified = 1
    real_roots = tuple(sorted(roots[real_mask].real))
    rest = roots[~real_mask]
    uppers = sorted((z for z in rest if z.imag > 0), key=lambda z: (z.real, z.imag))
    lowers = [z for z in rest if z.imag <= 0]
    pairs = []
    flagged = False
    for z in uppers:
        if not lowers:
            flagged = True
            break
        dist = [abs(z - w.conjugate()) for w in lowers]
        j = int(np.argmin(dist))
        lowers.pop(j)
        pairs.append(z)
    if lowers:
        flagged = True
    return Classification(real_roots, tuple(pairs), flagged, reclassified)


def _classify_batch(roots: np.ndarray, tau: float):
    """Vectorized real/upper masks with parity repair; see classify_roots."""
    n = roots.shape[1]
    margin = np.abs(roots.imag) - tau * (1.0 + np.abs(roots.real))
    real_mask = margin <= 0
    n_real = real_mask.sum(axis=1)
    bad = np.nonzero((n - n_real) % 2 == 1)[0]
    for s in bad:
        j = int(np.argmin(np.abs(margin[s])))
        real_mask[s, j] = not real_mask[s, j]
    upper_mask = (~real_mask) & (roots.imag > 0)
    return real_mask, upper_mask, bad.size


@dataclass
class SampleBatch:
    coefficients: np.ndarray
    roots: np.ndarray
    residual: np.ndarray
    real_mask: np.ndarray
    upper_mask: np.ndarray
    flagged: np.ndarray
    reclassified: int


def _sample_chunk(model: CoefficientModel, tau, resid_tol, seed, chunk_index, count) -> SampleBatch:
    rng = chunk_rng(seed, chunk_index)
    coeffs = model.sample_coefficients(rng, count)
    bad = np.abs(coeffs[:, -1]) < 1e-300
    while np.any(bad):
        coeffs[bad] = model.sample_coefficients(rng, int(bad.sum()))
        bad = np.abs(coeffs[:, -1]) < 1e-300
    roots, resid, conv = _kernels.aberth_roots(coeffs)
    real_mask, upper_mask, reclassified = _classify_batch(roots, tau)
    n = model.degree
    counts_ok = real_mask.sum(axis=1) + 2 * upper_mask.sum(axis=1) == n
    flagged = (~conv) | (resid > resid_tol) | (~counts_ok)
    return SampleBatch(coeffs, roots, resid, real_mask, upper_mask, flagged, reclassified)


# ---------------------------------------------------------------------------
# estimators


@dataclass(frozen=True)
class CellEstimate:
    """Per-cell zero intensity: mean count / cell measure, with stderr."""

    cell: tuple
    kind: str  # 'real' or 'complex'
    value: float
    stderr: float


@dataclass(frozen=True)
class LabEstimate:
    value: float
    stderr: float
    samples: int
    flagged: int


def _cell_counts(batch: SampleBatch, real_cells, complex_cells) -> np.ndarray:
    use = ~batch.flagged
    roots = batch.roots[use]
    rmask = batch.real_mask[use]
    umask = batch.upper_mask[use]
    out = np.empty((roots.shape[0], len(real_cells) + len(complex_cells)), dtype=np.int64)
    col = 0
    re, im = roots.real, roots.imag
    for a, b in real_cells:
        out[:, col] = (rmask & (re >= a) & (re < b)).sum(axis=1)
        col += 1
    for r0, r1, i0, i1 in complex_cells:
        out[:, col] = (umask & (re >= r0) & (re < r1) & (im >= i0) & (im < i1)).sum(axis=1)
        col += 1
    return out


def _density_chunk(model, real_cells, complex_cells, tau, rtol, seed, idx, count):
    batch = _sample_chunk(model, tau, rtol, seed, idx, count)
    cnt = _cell_counts(batch, real_cells, complex_cells)
    return (
        cnt.sum(axis=0),
        (cnt.astype(float) ** 2).sum(axis=0),
        cnt.shape[0],
        int(batch.flagged.sum()),
    )


def estimate_density(model: CoefficientModel, real_cells=(), complex_cells=(),
                     samples: int = 100_000, seed: int = 0, workers: int = 1,
                     tau: float = DEFAULT_REAL_TOL,
                     resid_tol: float = DEFAULT_RESID_TOL) -> list[CellEstimate]:
    """Empirical zero intensity per cell (real intervals / upper rectangles)."""
    real_cells = tuple(tuple(map(float, c)) for c in real_cells)
    complex_cells = tuple(tuple(map(float, c)) for c in complex_cells)
    ncells = len(real_cells) + len(complex_cells)
    tot = np.zeros(ncells)
    tot_sq = np.zeros(ncells)
    used = 0
    args = [(model, real_cells, complex_cells, tau, resid_tol, seed, idx, count)
            for idx, count in chunk_plan(samples)]
    for t, tsq, cnt, _ in map_chunks(_density_chunk, args, workers):
        tot += t
        tot_sq += tsq
        used += cnt
    out = []
    for i in range(ncells):
        mean = tot[i] / used
        var = (tot_sq[i] - used * mean**2) / (used - 1)
        se = float(np.sqrt(max(var, 0.0) / used))
        if i < len(real_cells):
            cell = real_cells[i]
            measure = cell[1] - cell[0]
            kind = "real"
        else:
            cell = complex_cells[i - len(real_cells)]
            measure = (cell[1] - cell[0]) * (cell[3] - cell[2])
            kind = "complex"
        out.append(CellEstimate(cell, kind, mean / measure, se / measure))
    return out


def _moment_chunk(model, real_cells, complex_cells, tau, rtol, seed, idx, count):
    batch = _sample_chunk(model, tau, rtol, seed, idx, count)
    cnt = _cell_counts(batch, real_cells, complex_cells)
    prod = cnt.prod(axis=1).astype(float)
    return float(prod.sum()), float((prod**2).sum()), cnt.shape[0], int(batch.flagged.sum())


def estimate_mixed_moment(model: CoefficientModel, boxes: BoxFamily,
                          samples: int = 100_000, seed: int = 0, workers: int = 1,
                          tau: float = DEFAULT_REAL_TOL,
                          resid_tol: float = DEFAULT_RESID_TOL) -> LabEstimate:
    """Sample mean of the product of zero counts over the disjoint boxes."""
    args = [(model, boxes.real_intervals, boxes.complex_rects, tau, resid_tol,
             seed, idx, count) for idx, count in chunk_plan(samples)]
    acc = RunningMoments()
    flagged = 0
    for tot, tot_sq, cnt, fl in map_chunks(_moment_chunk, args, workers):
        acc.add(tot, tot_sq, cnt)
        flagged += fl
    return LabEstimate(acc.mean, acc.stderr, acc.count, flagged)


def _pmf_chunk(model, tau, rtol, seed, idx, count):
    batch = _sample_chunk(model, tau, rtol, seed, idx, count)
    use = ~batch.flagged
    n_real = batch.real_mask[use].sum(axis=1)
    hist = np.bincount(n_real, minlength=model.degree + 1)
    return hist, int(use.sum()), int(batch.flagged.sum())


@dataclass(frozen=True)
class CountPmf:
    """Empirical real-zero-count distribution on the correct-parity support."""

    counts: tuple  # real-zero counts n, n-2, ...
    probabilities: tuple
    stderrs: tuple
    samples: int
    flagged: int

    def as_dict(self) -> dict:
        return {c: (p, s) for c, p, s in zip(self.counts, self.probabilities, self.stderrs)}


def real_count_pmf(model: CoefficientModel, samples: int = 100_000, seed: int = 0,
                   workers: int = 1, tau: float = DEFAULT_REAL_TOL,
                   resid_tol: float = DEFAULT_RESID_TOL) -> CountPmf:
    n = model.degree
    hist = np.zeros(n + 1, dtype=np.int64)
    used = 0
    flagged = 0
    args = [(model, tau, resid_tol, seed, idx, count) for idx, count in chunk_plan(samples)]
    for h, u, fl in map_chunks(_pmf_chunk, args, workers):
        hist += h
        used += u
        flagged += fl
    support = list(range(n, -1, -2))
    probs = [hist[c] / used for c in support]
    ses = [float(np.sqrt(p * (1 - p) / used)) for p in probs]
    return CountPmf(tuple(support), tuple(probs), tuple(ses), used, flagged)


# ---------------------------------------------------------------------------
# raw sample dump


def _dump_chunk(model, tau, rtol, seed, idx, count):
    batch = _sample_chunk(model, tau, rtol, seed, idx, count)
    lines = []
    for s in range(batch.coefficients.shape[0]):
        roots = batch.roots[s]
        real = tuple(sorted(roots[batch.real_mask[s]].real))
        pairs = tuple(sorted(roots[batch.upper_mask[s]], key=lambda z: (z.real, z.imag)))
        lines.append(ZeroSample(
            tuple(batch.coefficients[s]), real, pairs,
            float(batch.residual[s]), bool(batch.flagged[s]),
        ).to_json_line())
    return lines


def dump_samples(model: CoefficientModel, samples: int, seed: int, path,
                 workers: int = 1, tau: float = DEFAULT_REAL_TOL,
                 resid_tol: float = DEFAULT_RESID_TOL) -> int:
    """Write one JSON record per sample; chunk order keeps output reproducible."""
    written = 0
    args = [(model, tau, resid_tol, seed, idx, count) for idx, count in chunk_plan(samples)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for lines in map_chunks(_dump_chunk, args, workers):
            for line in lines:
                fh.write(line)
                fh.write("\n")
            written += len(lines)
    return written
