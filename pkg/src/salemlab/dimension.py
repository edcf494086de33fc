"""Estimators for box-counting, covering-sum, ball-mass and Fourier-decay exponents.

Band evaluations are independent and may run on a thread pool capped by
SALEMLAB_THREADS; results are assembled by band index, so identical
parameters and seed give identical output regardless of pool size.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .constructions import Scheme, StageReport
from .geometry import IntervalUnion
from .measures import Measure, PiecewiseUniformMeasure, natural_measure

_GOLDEN = 0.6180339887498949


class FitError(ValueError):
    """Raised when a regression is underdetermined or a gate fails."""


@dataclass(frozen=True)
class DecayFit:
    """Fitted power-law exponent with regression diagnostics.

    The multiplicative constant of the fitted law is exp(intercept).
    """

    exponent: float
    intercept: float
    r_squared: float
    scale_range: tuple[float, float]
    sample_count: int


@dataclass(frozen=True)
class DimensionReport:
    scheme: str
    stage: int
    piece_count: int
    min_diam: float
    hdim_est: float
    frostman_est: float
    fourier_raw: float
    fourier_dim: float
    salem_defect: float
    box_fit: DecayFit
    frostman_fit: DecayFit
    fourier_fit: DecayFit
    declared_hdim: float | None = None
    declared_fdim: float | None = None


def _least_squares(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Slope, intercept, r^2; constant data counts as a perfect flat fit."""
    n = len(xs)
    if n < 2:
        raise FitError("need at least two samples to fit")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        raise FitError("degenerate abscissa: all scales equal")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    sst = math.fsum((y - my) ** 2 for y in ys)
    if sst == 0.0:
        return slope, my - slope * mx, 1.0
    ssr = math.fsum((y - (my + slope * (x - mx))) ** 2 for x, y in zip(xs, ys))
    return slope, my - slope * mx, 1.0 - ssr / sst


def clamp_dimension(raw: float, d: int = 1) -> float:
    """Clamp a raw exponent into the admissible range [0, d]."""
    return min(max(raw, 0.0), float(d))


def covering_sum(cover, s: float) -> float:
    """sum(diam(E)^s) over the cover elements.

    Accepts an IntervalUnion (its pieces are the cover), an iterable of
    IntervalUnions, or raw (a, b) endpoint pairs.
    """
    if s < 0:
        raise FitError("exponent must be nonnegative")
    diams: list[float] = []
    if isinstance(cover, IntervalUnion):
        elements: Iterable = cover.pieces
    else:
        elements = cover
    for e in elements:
        if isinstance(e, IntervalUnion):
            from .geometry import diameter

            diams.append(float(diameter(e)))
        else:
            a, b = e
            diams.append(float(Fraction(b) - Fraction(a)) if not isinstance(b, Fraction) else float(b - a))
    return math.fsum(d**s for d in diams)


def box_count_fit(reports: Sequence[StageReport], scale: str = "max") -> DecayFit:
    """Least-squares slope of log N against -log delta over the stage ladder.

    `scale` picks which per-stage diameter statistic anchors the abscissa.
    Stages whose pieces are all degenerate are skipped.
    """
    if scale not in ("max", "min"):
        raise FitError("scale must be 'max' or 'min'")
    xs, ys = [], []
    for rep in reports:
        delta = rep.max_diam if scale == "max" else rep.min_diam
        if delta <= 0 or rep.piece_count < 1:
            continue
        xs.append(-math.log(float(delta)))
        ys.append(math.log(rep.piece_count))
    if len(set(xs)) < 2:
        raise FitError("need at least two distinct scales")
    slope, intercept, r2 = _least_squares(xs, ys)
    return DecayFit(slope, intercept, r2, (min(xs), max(xs)), len(xs))


def frostman_fit(
    mu: PiecewiseUniformMeasure,
    centers: Sequence,
    radii: Sequence,
    ambient_dim: int = 1,
) -> DecayFit:
    """Fit the ball-mass growth sup_x mu(B(x, r)) ~ c r^s.

    The exponent is clamped into [0, ambient_dim].
    """
    radii = [Fraction(r) if not isinstance(r, Fraction) else r for r in radii]
    if len(set(radii)) < 4:
        raise FitError("need at least four distinct radii")
    xs, ys = [], []
    for r in sorted(set(radii)):
        if r <= 0:
            raise FitError("radii must be positive")
        sup = max(mu.ball_mass(c, r) for c in centers)
        if sup <= 0.0:
            continue
        xs.append(math.log(float(r)))
        ys.append(math.log(sup))
    if len(xs) < 2:
        raise FitError("ball masses vanished at every scale")
    slope, intercept, r2 = _least_squares(xs, ys)
    return DecayFit(clamp_dimension(slope, ambient_dim), intercept, r2, (min(xs), max(xs)), len(xs))


def default_frostman_centers(mu: PiecewiseUniformMeasure, cap: int = 128) -> list[Fraction]:
    """Piece endpoints and midpoints, evenly thinned to the cap."""
    pts: list[Fraction] = []
    for a, b, _ in mu.pieces:
        pts.append(a)
        if b > a:
            pts.append((a + b) / 2)
            pts.append(b)
    pts = sorted(set(pts))
    if len(pts) > cap:
        step = (len(pts) - 1) / (cap - 1)
        pts = [pts[round(i * step)] for i in range(cap)]
    return pts


def default_frostman_radii(mu: PiecewiseUniformMeasure, min_scales: int = 6) -> list[Fraction]:
    """Geometric radii from diam/4 down to the smallest piece diameter.

    Radii below the finest piece scale are excluded: there the stage set is
    interval-like and every mass reading saturates at slope 1.
    """
    diam = mu.diameter()
    if diam <= 0:
        return [Fraction(1, 2**j) for j in range(2, 2 + max(min_scales, 4))]
    floor = min((b - a for a, b, _ in mu.pieces if b > a), default=diam / 2**10)
    radii = []
    r = diam / 4
    while r >= floor and len(radii) < 40:
        radii.append(r)
        r /= 2
    while len(radii) < max(min_scales, 4):
        radii.append(radii[-1] / 2 if radii else diam / 4)
    return radii


def _band_samples(lo: float, hi: float, count: int, seed: int) -> np.ndarray:
    """Logarithmic lattice with seeded low-discrepancy jitter.

    The jitter keeps the lattice incommensurate with self-similar frequency
    ladders that a bare geometric grid could alias against.
    """
    u0 = (seed * _GOLDEN) % 1.0
    i = np.arange(count)
    jitter = (u0 + i * _GOLDEN) % 1.0
    frac = (i + jitter) / count
    return lo * (hi / lo) ** frac


def _band_sup(mu: Measure, lo: float, hi: float, samples: int, seed: int) -> float:
    xis = _band_samples(lo, hi, samples, seed)
    resonant = mu.resonant_frequencies(lo, hi)
    if hasattr(mu, "fourier_modulus_many"):
        if resonant:
            xis = np.concatenate([xis, np.array(resonant)])
        return float(np.max(mu.fourier_modulus_many(xis)))
    best = max(mu.fourier_modulus(x) for x in xis)
    for xi in resonant:
        v = mu.fourier_modulus(xi)
        if v > best:
            best = v
    return best


def fourier_decay_fit(
    mu: Measure,
    xi_max: float = 2.0**16,
    bands: int = 10,
    samples_per_band: int = 128,
    seed: int = 0,
    ambient_dim: int = 1,
) -> DecayFit:
    """Power-law fit of per-band suprema of |mu^|.

    Bands are the top `bands` dyadic intervals below xi_max; within each,
    the supremum is taken over jittered log-lattice samples plus the
    measure's resonant candidates.  The fitted exponent is the raw decay
    rate (-2 * slope); clamp with `clamp_dimension` for the dimension
    estimate.
    """
    if bands < 4:
        raise FitError("need at least four bands")
    if samples_per_band < 64:
        raise FitError("need at least 64 samples per dyadic band")
    j_hi = math.floor(math.log2(xi_max))
    if j_hi - bands < 1:
        raise FitError("xi_max too small for the requested band count")
    threads = max(1, int(os.environ.get("SALEMLAB_THREADS", "1")))
    js = list(range(j_hi - bands, j_hi))

    def one(j: int) -> tuple[float, float]:
        lo, hi = 2.0**j, 2.0 ** (j + 1)
        sup = _band_sup(mu, lo, hi, samples_per_band, seed)
        return math.log(math.sqrt(lo * hi)), math.log(max(sup, 1e-300))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pts = list(pool.map(one, js))
    else:
        pts = [one(j) for j in js]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    slope, intercept, r2 = _least_squares(xs, ys)
    return DecayFit(-2.0 * slope, intercept, r2, (min(xs), max(xs)), len(xs))


def salem_report(
    scheme: Scheme,
    stage: int,
    xi_max: float = 2.0**16,
    bands: int = 10,
    samples_per_band: int = 128,
    seed: int = 0,
    fit_lo: int = 1,
) -> DimensionReport:
    """Box, Frostman and Fourier readings for one scheme at one stage.

    The box fit runs over the stage ladder fit_lo..stage; the Frostman fit
    uses the natural measure of the stage set; the Fourier fit uses the
    scheme's decay measure (the singular product measure for Cantor-type
    schemes, the natural stage measure otherwise, where the reading is a
    diagnostic rather than a certified value).
    """
    reports = scheme.reports(fit_lo, stage)
    box = box_count_fit(reports)
    ladders = scheme.block_ladders(stage)
    if ladders:
        # block towers: the union ladder mixes block births into the count,
        # so the dimension estimate is the sup of per-block fits (blocks
        # pairwise share at most a point by construction)
        block_fits = [box_count_fit(lad).exponent for lad in ladders if len(lad) >= 2]
        hdim = countable_union_sup(block_fits, True)
    else:
        hdim = box.exponent
    stage_set = scheme.stage(stage)
    mu_nat = natural_measure(stage_set)
    fro = frostman_fit(mu_nat, default_frostman_centers(mu_nat), default_frostman_radii(mu_nat))
    mu_dec = scheme.decay_measure(stage)
    fou = fourier_decay_fit(mu_dec, xi_max, bands, samples_per_band, seed)
    fdim = clamp_dimension(fou.exponent, 1)
    last = reports[-1]
    return DimensionReport(
        scheme=scheme.name,
        stage=stage,
        piece_count=last.piece_count,
        min_diam=float(last.min_diam),
        hdim_est=hdim,
        frostman_est=fro.exponent,
        fourier_raw=fou.exponent,
        fourier_dim=fdim,
        salem_defect=hdim - fdim,
        box_fit=box,
        frostman_fit=fro,
        fourier_fit=fou,
        declared_hdim=scheme.declared_hdim,
        declared_fdim=scheme.declared_fdim,
    )


def countable_union_sup(reports: Sequence, blocks_almost_disjoint: bool) -> float:
    """Sup of per-block dimension estimates.

    Valid only when distinct blocks share at most single points; without
    that gate sup-stability of the Fourier reading fails, so the call is
    refused.
    """
    if not blocks_almost_disjoint:
        raise FitError(
            "blocks must be pairwise almost disjoint for the sup rule to apply"
        )
    vals = [r.hdim_est if isinstance(r, DimensionReport) else float(r) for r in reports]
    if not vals:
        raise FitError("no block reports given")
    return max(vals)
