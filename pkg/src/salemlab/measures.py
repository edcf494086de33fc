"""Probability measures with closed-form Fourier transforms.

Geometry stays rational, weights are floats.  Scalar transform values are
accumulated with math.fsum so they do not depend on piece order; vector
sweeps run through numpy with a fixed accumulation order.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import IntervalUnion, as_fraction

_TWO_PI = 2.0 * math.pi


class MeasureError(ValueError):
    pass


def _sinc(t: float) -> float:
    return 1.0 if t == 0.0 else math.sin(t) / t


@dataclass(frozen=True)
class FourierSample:
    """One transform evaluation; probability measures keep |value| <= 1."""

    xi: float
    value: complex

    def __post_init__(self) -> None:
        if abs(self.value) > 1.0 + 1e-9:
            raise MeasureError("transform modulus exceeds total mass")

    @property
    def modulus(self) -> float:
        return abs(self.value)


class PiecewiseUniformMeasure:
    """Mixture of uniform densities on disjoint intervals plus point masses.

    A degenerate piece [a, a] carries its weight as an atom at a.
    """

    def __init__(self, pieces: Iterable[tuple[Fraction, Fraction, float]]) -> None:
        norm = []
        for a, b, w in pieces:
            fa, fb = as_fraction(a), as_fraction(b)
            if fa > fb:
                raise MeasureError("reversed support interval")
            if w <= 0:
                raise MeasureError("weights must be positive")
            norm.append((fa, fb, float(w)))
        norm.sort(key=lambda p: (p[0], p[1]))
        total = math.fsum(w for _, _, w in norm)
        if abs(total - 1.0) > 1e-12:
            raise MeasureError(f"weights sum to {total}, not 1")
        self.pieces = tuple(norm)
        self._lefts = [a for a, _, _ in norm]
        cum = [0.0]
        for _, _, w in norm:
            cum.append(cum[-1] + w)
        self._cumw = cum
        # numpy views for vectorized sweeps
        self._centers = np.array([float((a + b) / 2) for a, b, _ in norm])
        self._halves = np.array([float((b - a) / 2) for a, b, _ in norm])
        self._weights = np.array([w for _, _, w in norm])

    def __repr__(self) -> str:
        return f"PiecewiseUniformMeasure({len(self.pieces)} pieces)"

    # -- transform ----------------------------------------------------------

    def fourier_eval(self, xi: float) -> complex:
        """Exact closed form: sum of w * e^(-i xi (a+b)/2) * sinc(xi (b-a)/2)."""
        re = []
        im = []
        for a, b, w in self.pieces:
            c = float((a + b) / 2)
            h = float((b - a) / 2)
            mod = w * _sinc(xi * h)
            re.append(mod * math.cos(xi * c))
            im.append(-mod * math.sin(xi * c))
        return complex(math.fsum(re), math.fsum(im))

    def fourier_modulus(self, xi: float) -> float:
        # single piece: the phase factor is unimodular, so the modulus is
        # exactly w * |sinc|; this keeps atoms at modulus w without rounding
        if len(self.pieces) == 1:
            _, _, w = self.pieces[0]
            return w * abs(_sinc(xi * float(self._halves[0])))
        return abs(self.fourier_eval(xi))

    def fourier_eval_many(self, xis: np.ndarray) -> np.ndarray:
        """Vectorized transform values with a fixed accumulation order."""
        out = np.zeros(len(xis), dtype=complex)
        for start in range(0, len(self._weights), 512):
            sl = slice(start, start + 512)
            arg = np.outer(xis, self._centers[sl])
            t = np.outer(xis, self._halves[sl])
            sinc = np.sinc(t / np.pi)
            out += (self._weights[sl] * sinc * np.exp(-1j * arg)).sum(axis=1)
        return out

    def fourier_modulus_many(self, xis: np.ndarray) -> np.ndarray:
        if len(self.pieces) == 1:
            w = self.pieces[0][2]
            return w * np.abs(np.sinc(xis * float(self._halves[0]) / np.pi))
        out = np.zeros(len(xis), dtype=complex)
        for start in range(0, len(self._weights), 512):
            sl = slice(start, start + 512)
            arg = np.outer(xis, self._centers[sl])
            t = np.outer(xis, self._halves[sl])
            sinc = np.sinc(t / np.pi)
            out += (self._weights[sl] * sinc * np.exp(-1j * arg)).sum(axis=1)
        return np.abs(out)

    def sample(self, xi: float) -> FourierSample:
        return FourierSample(xi, self.fourier_eval(xi))

    def resonant_frequencies(self, lo: float, hi: float, cap: int = 24) -> list[float]:
        """Envelope peaks (2k+1)pi/L of the dominant piece lengths in [lo, hi).

        Only the most heavily weighted lengths are probed; for measures with
        thousands of distinct lengths the generic lattice carries the sweep.
        """
        by_len: dict[float, float] = {}
        for a, b, w in self.pieces:
            if b > a:
                key = float(b - a)
                by_len[key] = by_len.get(key, 0.0) + w
        lengths = sorted(by_len, key=by_len.get, reverse=True)[:8]
        out: list[float] = []
        for L in lengths:
            k = max(0, int(lo * L / _TWO_PI) - 1)
            added = 0
            while added < cap:
                xi = (2 * k + 1) * math.pi / L
                if xi >= hi:
                    break
                if xi >= lo:
                    out.append(xi)
                    added += 1
                k += 1
        return out

    # -- mass ----------------------------------------------------------------

    def _piece_overlap(self, k: int, lo: Fraction, hi: Fraction) -> float:
        a, b, w = self.pieces[k]
        if b < lo or a > hi:
            return 0.0
        if a == b:
            return w
        overlap = min(b, hi) - max(a, lo)
        if overlap <= 0:
            return 0.0
        return float(Fraction(w) * overlap / (b - a))

    def ball_mass(self, x, r) -> float:
        """Exact mass of the closed ball [x-r, x+r] via rational overlaps.

        Interior pieces are fully covered, so only the two boundary pieces
        need fractional-overlap arithmetic; the bulk comes from prefix sums.
        """
        fx, fr = as_fraction(x), as_fraction(r)
        if fr <= 0:
            raise MeasureError("radius must be positive")
        lo, hi = fx - fr, fx + fr
        i = bisect.bisect_left(self._lefts, lo)
        if i > 0 and self.pieces[i - 1][1] >= lo:
            i -= 1
        j = bisect.bisect_right(self._lefts, hi) - 1
        if j < i:
            return 0.0
        if j == i:
            return self._piece_overlap(i, lo, hi)
        bulk = self._cumw[j] - self._cumw[i + 1]
        return bulk + self._piece_overlap(i, lo, hi) + self._piece_overlap(j, lo, hi)

    def affine_pushforward(self, a, t) -> "PiecewiseUniformMeasure":
        fa, ft = as_fraction(a), as_fraction(t)
        if fa == 0:
            raise MeasureError("affine scale must be nonzero")
        mapped = []
        for p, q, w in self.pieces:
            u, v = sorted((fa * p + ft, fa * q + ft))
            mapped.append((u, v, w))
        return PiecewiseUniformMeasure(mapped)

    def diameter(self) -> Fraction:
        return self.pieces[-1][1] - self.pieces[0][0]

    def support_endpoints(self) -> list[Fraction]:
        return sorted({e for a, b, _ in self.pieces for e in (a, b)})

    # -- serialization --------------------------------------------------------

    def to_json(self) -> str:
        import json

        from .geometry import format_fraction

        return json.dumps(
            {
                "pieces": [
                    {"a": format_fraction(a), "b": format_fraction(b), "w": w}
                    for a, b, w in self.pieces
                ]
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseUniformMeasure":
        import json

        obj = json.loads(text)
        return cls(
            [(Fraction(p["a"]), Fraction(p["b"]), p["w"]) for p in obj["pieces"]]
        )


class SelfSimilarProductMeasure:
    """Limit measure of a branching construction, via the product formula.

    Offsets are parent-relative; `offsets[j]` and `contractions[j]` cycle
    when a stage exceeds the stored schedule.  An affine frame (scale,
    shift) composes pushforwards without touching the schedule.
    """

    def __init__(
        self,
        branching: int,
        offsets: Sequence[Sequence[Fraction]],
        contractions: Sequence[Fraction],
        scale: Fraction = Fraction(1),
        shift: Fraction = Fraction(0),
    ) -> None:
        if branching < 2:
            raise MeasureError("branching must be >= 2")
        if not offsets or not contractions:
            raise MeasureError("need at least one stage of offsets and contractions")
        self.branching = branching
        self.offsets = tuple(tuple(as_fraction(o) for o in off) for off in offsets)
        self.contractions = tuple(as_fraction(c) for c in contractions)
        for off in self.offsets:
            if len(off) != branching:
                raise MeasureError("each offset stage must list one offset per branch")
        if any(not 0 < c < 1 for c in self.contractions):
            raise MeasureError("contractions must lie in (0, 1)")
        self.scale = as_fraction(scale)
        self.shift = as_fraction(shift)
        if self.scale == 0:
            raise MeasureError("affine scale must be nonzero")

    def _stage_scales(self, depth: int) -> list[float]:
        """|parent length| ahead of stages 1..depth."""
        out = [abs(float(self.scale))]
        for j in range(1, depth):
            c = self.contractions[(j - 1) % len(self.contractions)]
            out.append(out[-1] * float(c))
        return out

    def auto_depth(self, xi: float) -> int:
        """Depth rule: truncate once the residual scale resolves xi to 1e-3."""
        s = abs(float(self.scale))
        depth = 0
        target = 1e-3 / max(abs(xi), 1.0)
        while depth < 200 and (depth < 8 or s >= target):
            c = self.contractions[depth % len(self.contractions)]
            s *= float(c)
            depth += 1
        return depth

    def fourier_eval(self, xi: float, depth: int | None = None) -> complex:
        """Truncated product: prod over stages of the mean branch phase."""
        if depth is None:
            depth = self.auto_depth(xi)
        if depth < 1:
            raise MeasureError("depth must be >= 1")
        sgn = 1.0 if self.scale > 0 else -1.0
        scales = self._stage_scales(depth)
        acc = cmath.exp(-1j * xi * float(self.shift))
        inv_b = 1.0 / self.branching
        for j in range(1, depth + 1):
            s = scales[j - 1] * sgn
            off = self.offsets[(j - 1) % len(self.offsets)]
            acc *= inv_b * sum(cmath.exp(-1j * xi * float(o) * s) for o in off)
        return acc

    def fourier_modulus(self, xi: float, depth: int | None = None) -> float:
        return abs(self.fourier_eval(xi, depth))

    def sample(self, xi: float, depth: int | None = None) -> FourierSample:
        return FourierSample(xi, self.fourier_eval(xi, depth))

    def resonant_frequencies(self, lo: float, hi: float, mmax: int = 24) -> list[float]:
        """Candidate extrema pi*m/s_k on the reciprocal lattice of the scales.

        The decay condition is a supremum over all frequencies; for
        self-similar measures the transform is largest along the reciprocal
        lattice of the construction scales, so band suprema sampled without
        these points would overstate the decay.
        """
        out: set[float] = set()
        s = abs(float(self.scale))
        k = 0
        while True:
            base = math.pi / s
            if base >= hi and k > 0:
                break
            for m in range(1, mmax + 1):
                xi = base * m
                if lo <= xi < hi:
                    out.add(xi)
            if base > hi * mmax:
                break
            c = self.contractions[k % len(self.contractions)]
            s *= float(c)
            k += 1
            if k > 400:
                break
        return sorted(out)

    def affine_pushforward(self, a, t) -> "SelfSimilarProductMeasure":
        fa, ft = as_fraction(a), as_fraction(t)
        if fa == 0:
            raise MeasureError("affine scale must be nonzero")
        return SelfSimilarProductMeasure(
            self.branching,
            self.offsets,
            self.contractions,
            scale=fa * self.scale,
            shift=fa * self.shift + ft,
        )


Measure = PiecewiseUniformMeasure | SelfSimilarProductMeasure


def natural_measure(A: IntervalUnion) -> PiecewiseUniformMeasure:
    """Equal weight per piece, uniform within each piece; atoms on singletons."""
    if A.is_empty:
        raise MeasureError("the empty set supports no probability measure")
    n = len(A.pieces)
    return PiecewiseUniformMeasure([(a, b, 1.0 / n) for a, b in A.pieces])


def fourier_eval(mu: Measure, xi: float) -> complex:
    return mu.fourier_eval(xi)


def fourier_eval_product(mu: SelfSimilarProductMeasure, xi: float, depth: int) -> complex:
    return mu.fourier_eval(xi, depth)


def ball_mass(mu: PiecewiseUniformMeasure, x, r) -> float:
    return mu.ball_mass(x, r)


def affine_pushforward(mu: Measure, a, t) -> Measure:
    return mu.affine_pushforward(a, t)
