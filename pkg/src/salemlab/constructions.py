"""Stagewise fractal builders and reduction-map schemes.

Every scheme emits nested IntervalUnion stages together with per-stage
piece statistics.  Stage generation is deterministic and pure; distinct
schemes and distinct stages can be built concurrently.

The nested refinement used by the well-approximable-number schemes places
children at rational centers i/q with q drawn from dyadic prime blocks,
and calibrates child lengths so that the per-stage piece counts scale with
the declared dimension target.  Literal cumulative intersection of the
approximation blocks empties out after a few stages, and an uncalibrated
subselection reads a systematically wrong counting exponent, so the
calibrated refinement is what the stage ladder exposes to the estimators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .bitseq import BitMatrix, BitSequence, ZERO_SEQ, p3_member, phi_transform, q2_member
from .geometry import BoxUnion, IntervalUnion, as_fraction
from .primes import next_prime, primes_in_range

__all__ = [
    "StageReport",
    "Scheme",
    "CantorScheme",
    "GeneralizedCantorScheme",
    "IntervalScheme",
    "JarnikScheme",
    "SAlphaScheme",
    "FpScheme",
    "Pi03Scheme",
    "SalemGapScheme",
    "WeihrauchScheme",
    "cantor_stage",
    "jarnik_stage",
    "s_alpha_stage",
    "f_p_stage",
    "pi03_stage",
    "salem_gap_stage",
    "weihrauch_encode",
    "weihrauch_dimension_target",
    "radial_lift",
    "radial_reports",
    "shrink_cap",
    "shrink_bound_holds",
    "phi_transform",
    "q2_member",
    "p3_member",
]


class ConstructionError(ValueError):
    """Raised when a staged construction cannot proceed (empty stage, bad parameter)."""


@dataclass(frozen=True)
class StageReport:
    """Piece statistics of one stage: count and diameter range."""

    stage: int
    piece_count: int
    min_diam: Fraction
    max_diam: Fraction

    @classmethod
    def of(cls, stage: int, union: IntervalUnion) -> "StageReport":
        diams = [b - a for a, b in union.pieces if b > a]
        if not diams:
            return cls(stage, len(union.pieces), Fraction(0), Fraction(0))
        return cls(stage, len(union.pieces), min(diams), max(diams))


def _dyadic_pow(base: float, exponent: float, bits: int = 48) -> Fraction:
    """Dyadic rational approximation of base**exponent (positive base)."""
    e = exponent * math.log2(base)
    k = math.floor(e)
    frac = 2.0 ** (e - k)
    mant = Fraction(round(frac * (1 << bits)), 1 << bits)
    return mant * (Fraction(2) ** k)


class Scheme:
    """Common scheme interface: nested stages plus fitting metadata."""

    name: str = "scheme"
    nested: bool = True
    declared_hdim: float | None = None
    declared_fdim: float | None = None

    def stage(self, k: int) -> IntervalUnion:
        raise NotImplementedError

    def stage_report(self, k: int) -> StageReport:
        return StageReport.of(k, self.stage(k))

    def reports(self, lo: int, hi: int) -> list[StageReport]:
        return [self.stage_report(k) for k in range(lo, hi + 1)]

    def decay_measure(self, k: int):
        """Measure used for Fourier-decay readings at stage k."""
        from . import measures

        return measures.natural_measure(self.stage(k))

    def block_ladders(self, k: int) -> list[list[StageReport]] | None:
        """Per-block stage ladders for sup-rule dimension prediction.

        None for single-component schemes; block towers override.  Blocks
        live in pairwise almost-disjoint intervals, which is what licenses
        taking the sup of per-block fits.
        """
        return None


# ---------------------------------------------------------------------------
# self-similar Cantor schemes
# ---------------------------------------------------------------------------


def cantor_stage(n: int, k: int) -> IntervalUnion:
    """Stage k of the symmetric Cantor construction with dissection ratio 1/n.

    Each parent [a, b] spawns [a, a + (b-a)/n] and [b - (b-a)/n, b], so the
    stage holds 2^k intervals of length n^-k.
    """
    if n < 3:
        raise ConstructionError("dissection parameter must satisfy n >= 3")
    if k < 0:
        raise ConstructionError("stage must be nonnegative")
    pieces = [(Fraction(0), Fraction(1))]
    for _ in range(k):
        nxt = []
        for a, b in pieces:
            w = (b - a) / n
            nxt.append((a, a + w))
            nxt.append((b - w, b))
        pieces = nxt
    return IntervalUnion(pieces)


class CantorScheme(Scheme):
    def __init__(self, n: int) -> None:
        if n < 3:
            raise ConstructionError("dissection parameter must satisfy n >= 3")
        self.n = n
        self.name = f"cantor:{n}"
        self.declared_hdim = math.log(2) / math.log(n)
        self.declared_fdim = 0.0

    def stage(self, k: int) -> IntervalUnion:
        return cantor_stage(self.n, k)

    def decay_measure(self, k: int):
        from . import measures

        return measures.SelfSimilarProductMeasure(
            branching=2,
            offsets=((Fraction(0), Fraction(self.n - 1, self.n)),),
            contractions=(Fraction(1, self.n),),
        )


class GeneralizedCantorScheme(Scheme):
    """Binary-branching Cantor set with a per-stage length schedule.

    `lengths(k)` gives the piece length at stage k (lengths(0) == 1); the
    schedule is clamped so children always fit inside their parent.
    """

    def __init__(self, lengths: Callable[[int], Fraction], name: str = "gcantor") -> None:
        self.name = name
        self._sched = lengths
        self._lengths: list[Fraction] = [Fraction(1)]
        self._stages: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(0), Fraction(1))]]

    @classmethod
    def for_dimension(cls, p: float) -> "GeneralizedCantorScheme":
        """Length schedule 2^(-k/p): counting dimension p, binary branching."""
        if not 0 < p <= 1:
            raise ConstructionError("dimension target must be in (0, 1]")
        sched = lambda k: _dyadic_pow(2.0, -k / p)
        s = cls(sched, name=f"gcantor:{p:g}")
        s.declared_hdim = p
        s.declared_fdim = 0.0
        return s

    def _ensure(self, k: int) -> None:
        while len(self._stages) <= k:
            j = len(self._stages)
            parent_len = self._lengths[j - 1]
            ell = min(self._sched(j), parent_len / 2)
            nxt = []
            for a, b in self._stages[j - 1]:
                nxt.append((a, a + ell))
                nxt.append((b - ell, b))
            self._lengths.append(ell)
            self._stages.append(nxt)

    def stage(self, k: int) -> IntervalUnion:
        self._ensure(k)
        return IntervalUnion.from_intervals(self._stages[k])

    def decay_measure(self, k: int):
        from . import measures

        self._ensure(max(k, 24))
        contractions = tuple(
            self._lengths[j] / self._lengths[j - 1] for j in range(1, len(self._lengths))
        )
        offsets = tuple((Fraction(0), 1 - c) for c in contractions)
        return measures.SelfSimilarProductMeasure(
            branching=2, offsets=offsets, contractions=contractions
        )


class IntervalScheme(Scheme):
    """The ambient interval, reported through dyadic grid covers.

    The stage set is constantly [0, 1]; the stage-k report counts the 2^k
    closed dyadic cells produced by the grid partition, which is the box
    count of the interval at scale 2^-k.
    """

    name = "interval"
    declared_hdim = 1.0
    declared_fdim = 1.0

    def stage(self, k: int) -> IntervalUnion:
        return IntervalUnion.full()

    def stage_report(self, k: int) -> StageReport:
        from .geometry import simplex_partition_1d

        cells = simplex_partition_1d(self.stage(k), Fraction(1, 2**k))
        return StageReport(k, len(cells), Fraction(1, 2**k), Fraction(1, 2**k))


# ---------------------------------------------------------------------------
# well-approximable-number blocks
# ---------------------------------------------------------------------------


def _radius(q: int, alpha: float) -> Fraction:
    """q^-(2+alpha) as an exact Fraction when alpha is integral, dyadic otherwise."""
    if float(alpha).is_integer():
        return Fraction(1, q ** (2 + int(alpha)))
    return _dyadic_pow(float(q), -(2.0 + alpha))


def jarnik_stage(alpha: float, j: int) -> IntervalUnion:
    """Block j of the well-approximable construction.

    Union over primes q in [2^j, 2^(j+1)) and residues p in {0..q} of the
    closed intervals [p/q - q^-(2+alpha), p/q + q^-(2+alpha)], clamped to
    [0, 1] and merged where they overlap.
    """
    return _jarnik_stage_cached(float(alpha), j)


@lru_cache(maxsize=64)
def _jarnik_stage_cached(alpha: float, j: int) -> IntervalUnion:
    if alpha < 0:
        raise ConstructionError("alpha must be nonnegative")
    if j < 1:
        raise ConstructionError("block index must be >= 1")
    primes = primes_in_range(2**j, 2 ** (j + 1))
    assert primes, "dyadic prime block is never empty for j >= 1"
    intervals = []
    for q in primes:
        r = _radius(q, alpha)
        for p in range(q + 1):
            c = Fraction(p, q)
            intervals.append((c - r, c + r))
    return IntervalUnion.from_intervals(intervals)


class JarnikScheme(Scheme):
    """Block family indexed by the dyadic prime-block exponent.

    Blocks are not nested in the block index; the counting fit across
    blocks is the dimension reading for this scheme.
    """

    nested = False

    def __init__(self, alpha: float) -> None:
        if alpha < 0:
            raise ConstructionError("alpha must be nonnegative")
        self.alpha = alpha
        self.name = f"jarnik:{alpha:g}"
        self.declared_hdim = 2.0 / (2.0 + alpha)
        self.declared_fdim = 2.0 / (2.0 + alpha)

    def stage(self, j: int) -> IntervalUnion:
        if j == 0:
            return IntervalUnion.full()
        return jarnik_stage(self.alpha, j)


# ---------------------------------------------------------------------------
# calibrated nested approximation scheme
# ---------------------------------------------------------------------------


class SAlphaScheme(Scheme):
    """Nested refinement through prime-block rational centers.

    Stage k+1 places `branching` children inside every stage-k piece,
    centered at lattice points i/q for a prime q from the smallest dyadic
    block that resolves the current piece length.  Child lengths follow the
    calibrated schedule L * branching^(-1/p) with p = 2/(2+alpha), so the
    stage ladder counts at exponent p while every piece stays populated
    (the refinement property the nesting arguments rely on).
    """

    def __init__(self, alpha: float, branching: int = 3) -> None:
        if alpha < 0:
            raise ConstructionError("alpha must be nonnegative")
        if branching < 2:
            raise ConstructionError("branching must be >= 2")
        self.alpha = alpha
        self.branching = branching
        self.p = 2.0 / (2.0 + alpha)
        self.name = f"salpha:{alpha:g}"
        self.declared_hdim = self.p
        ratio = _dyadic_pow(float(branching), -1.0 / self.p)
        cap = Fraction(1, branching) * Fraction(63, 64)
        self._ratio = min(ratio, cap)
        self._lengths: list[Fraction] = [Fraction(1)]
        self._primes: list[int] = [0]
        self._stages: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(0), Fraction(1))]]

    def _refine(
        self, pieces: list[tuple[Fraction, Fraction]], ell: Fraction
    ) -> tuple[list[tuple[Fraction, Fraction]], int]:
        G = self.branching
        parent_len = pieces[0][1] - pieces[0][0]
        slack = (parent_len - G * ell) / (G + 1)
        fine = min(ell, slack if slack > 0 else ell) / (8 * G)
        jbits = max(1, (math.ceil(1 / fine) - 1).bit_length())
        q = next_prime(2**jbits)
        half = ell / 2
        out: list[tuple[Fraction, Fraction]] = []
        for a, b in pieces:
            lo, hi = a + half, b - half
            span = hi - lo
            lo_idx = math.ceil(lo * q)
            hi_idx = math.floor(hi * q)
            for i in range(G):
                target = lo + span * Fraction(i, G - 1) if G > 1 else lo + span / 2
                idx = min(max(round(target * q), lo_idx), hi_idx)
                c = Fraction(idx, q)
                out.append((c - half, c + half))
        return out, q

    def _ensure(self, k: int) -> None:
        while len(self._stages) <= k:
            ell = self._lengths[-1] * self._ratio
            pieces, q = self._refine(self._stages[-1], ell)
            if not pieces:
                raise ConstructionError("refinement produced an empty stage")
            self._stages.append(pieces)
            self._lengths.append(ell)
            self._primes.append(q)

    def stage(self, k: int) -> IntervalUnion:
        if k < 0:
            raise ConstructionError("stage must be nonnegative")
        self._ensure(k)
        return IntervalUnion(self._stages[k])

    def stage_prime(self, k: int) -> int:
        self._ensure(k)
        return self._primes[k]


_SALPHA_CACHE: dict[tuple[float, int], SAlphaScheme] = {}


def _shared_salpha(alpha: float, branching: int) -> SAlphaScheme:
    key = (round(alpha, 12), branching)
    if key not in _SALPHA_CACHE:
        _SALPHA_CACHE[key] = SAlphaScheme(alpha, branching)
    return _SALPHA_CACHE[key]


def s_alpha_stage(
    alpha: float, k: int, target: tuple = (Fraction(0), Fraction(1))
) -> IntervalUnion:
    """Stage k of the nested approximation scheme, affinely scaled to target."""
    lo, hi = as_fraction(target[0]), as_fraction(target[1])
    if lo >= hi:
        raise ConstructionError("target interval must be nondegenerate")
    unit = _shared_salpha(alpha, 3).stage(k)
    if (lo, hi) == (Fraction(0), Fraction(1)):
        return unit
    return unit.map_onto((lo, hi))


# ---------------------------------------------------------------------------
# the dimension-control map on binary sequences
# ---------------------------------------------------------------------------


def shrink_cap(k: int, piece_count: int) -> Fraction:
    """Exact child-length cap (2^-k / N)^(2^k) used at a 1-bit of stage k."""
    return (Fraction(1, 2**k) / piece_count) ** (2**k)


def shrink_bound_holds(diams: Sequence[Fraction], k: int) -> bool:
    """Exact check of sum(diam^(2^-k)) <= 2^-k over the stage-(k+1) pieces.

    Raising both sides of diam^(2^-k) <= 2^-k / N to the 2^k power turns the
    irrational-exponent comparison into a rational one, so the bound is
    verified without floating point.
    """
    n = len(diams)
    cap = shrink_cap(k, n)
    return all(d <= cap for d in diams)


class FpScheme(Scheme):
    """Stage family of the sequence-controlled construction.

    A 1-bit at position k+1 replaces each piece by a centered subinterval
    whose length is capped by `shrink_cap`; a 0-bit advances the scaled
    nested approximation scheme inside the pieces of the last reset.  With
    the all-zero sequence the stages coincide with the plain scheme.
    """

    def __init__(
        self,
        p: float,
        x: BitSequence,
        branching: int = 3,
    ) -> None:
        if not 0 < p <= 1:
            raise ConstructionError("dimension parameter must lie in (0, 1]")
        self.p = p
        self.x = x
        self.alpha = 2.0 / p - 2.0
        self.branching = branching
        self.name = f"fp:{p:g}:x={x}"
        self.declared_hdim = p if x.is_eventually_zero else 0.0
        self.declared_fdim = self.declared_hdim
        self._sal = _shared_salpha(self.alpha, branching)
        self._stages: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(0), Fraction(1))]]
        self._base: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))]
        self._depth_since_reset = 0
        self._shrinks: list[tuple[int, int, Fraction]] = []

    def _ensure(self, k: int) -> None:
        while len(self._stages) <= k:
            s = len(self._stages) - 1  # current stage index
            cur = self._stages[-1]
            if self.x.bit(s + 1) == 1:
                n = len(cur)
                cap = shrink_cap(s, n)
                nxt = []
                for a, b in cur:
                    half = min(b - a, cap) / 2
                    c = (a + b) / 2
                    nxt.append((c - half, c + half))
                self._base = nxt
                self._depth_since_reset = 0
                self._shrinks.append((s, n, cap))
            else:
                self._depth_since_reset += 1
                unit = self._sal.stage(self._depth_since_reset)
                if self._base == [(Fraction(0), Fraction(1))]:
                    nxt = list(unit.pieces)
                else:
                    nxt = []
                    for a, b in self._base:
                        nxt.extend(unit.map_onto((a, b)).pieces)
            self._stages.append(nxt)

    def stage(self, k: int) -> IntervalUnion:
        if k < 0:
            raise ConstructionError("stage must be nonnegative")
        self._ensure(k)
        return IntervalUnion(self._stages[k])

    def shrink_events(self, k: int) -> list[tuple[int, int, Fraction]]:
        """(stage, piece count, cap) for every 1-bit processed up to stage k."""
        self._ensure(k)
        return [e for e in self._shrinks if e[0] < k]


def f_p_stage(
    p: float, x: BitSequence, k: int, branching: int = 3
) -> IntervalUnion:
    return FpScheme(p, x, branching).stage(k)


# ---------------------------------------------------------------------------
# dyadic block towers
# ---------------------------------------------------------------------------


def block_interval(m: int) -> tuple[Fraction, Fraction]:
    """T_m = [2^-(m+1), 2^-m]."""
    return (Fraction(1, 2 ** (m + 1)), Fraction(1, 2**m))


def _tower_report(stage: int, union: IntervalUnion) -> StageReport:
    """Stage statistics with the accumulation tail excluded.

    The leading piece anchored at 0 is the placeholder for the blocks not
    yet built; its width tracks the block grid, not the fractal ladder, so
    it would corrupt the diameter statistics the count fits regress on.
    """
    pieces = [p for p in union.pieces if p[0] != 0]
    return StageReport.of(stage, IntervalUnion(pieces, space=union.space))


class Pi03Scheme(Scheme):
    """Tower of sequence-controlled blocks accumulating at 0.

    Block m lives in T_m and runs the stage-k construction for row m at
    dimension target p(1 - 2^-m); the closed tail [0, 2^-(k+1)] holds the
    accumulation point and the not-yet-started blocks, which keeps the
    stages nested as new blocks appear.
    """

    def __init__(self, p: float, x: BitMatrix, branching: int = 3) -> None:
        if not 0 < p <= 1:
            raise ConstructionError("dimension parameter must lie in (0, 1]")
        self.p = p
        self.x = x
        self.branching = branching
        self.name = f"pi03:{p:g}"
        self._blocks: dict[int, FpScheme | None] = {}
        good = [self.q_m(m) for m in range(x.max_row + 2) if x.row(m).is_eventually_zero]
        self.declared_hdim = p if x.tail.is_eventually_zero else (max(good) if good else 0.0)
        self.declared_fdim = self.declared_hdim

    def q_m(self, m: int) -> float:
        return self.p * (1.0 - 2.0**-m)

    def block(self, m: int) -> FpScheme | None:
        if m not in self._blocks:
            q = self.q_m(m)
            self._blocks[m] = FpScheme(q, self.x.row(m), self.branching) if q > 0 else None
        return self._blocks[m]

    def block_union(self, m: int, k: int) -> IntervalUnion:
        blk = self.block(m)
        if blk is None:
            return IntervalUnion.empty()
        return blk.stage(k).map_onto(block_interval(m))

    def stage(self, k: int) -> IntervalUnion:
        if k < 0:
            raise ConstructionError("stage must be nonnegative")
        pieces: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1, 2 ** (k + 1)))]
        for m in range(k + 1):
            pieces.extend(self.block_union(m, k).pieces)
        return IntervalUnion.from_intervals(pieces)

    def stage_report(self, k: int) -> StageReport:
        return _tower_report(k, self.stage(k))

    def block_ladders(self, k: int) -> list[list[StageReport]]:
        out = []
        for m in range(k + 1):
            blk = self.block(m)
            if blk is not None:
                out.append(blk.reports(1, k))
        return out


def pi03_stage(p: float, x: BitMatrix, k: int, branching: int = 3) -> IntervalUnion:
    return Pi03Scheme(p, x, branching).stage(k)


class SalemGapScheme(Scheme):
    """Block tower whose head block pins the Hausdorff dimension at p.

    T_0 carries a Cantor-type set of counting dimension p (vanishing
    Fourier decay); T_n for n >= 1 carries the stage construction for row
    n-1 at dimension target p(1 - 2^-n).  The full-dimension reading is
    Salem-like exactly when every row is eventually zero.
    """

    def __init__(self, p: float, x: BitMatrix, branching: int = 2) -> None:
        # binary branching throughout: the head block is binary by design,
        # and a uniform count rate across blocks keeps the union ladder
        # readable (count and diameter then track the same dominant block)
        if not 0 < p <= 1:
            raise ConstructionError("dimension parameter must lie in (0, 1]")
        self.p = p
        self.x = x
        self.branching = branching
        self.name = f"salemgap:{p:g}"
        if abs(p - math.log(2) / math.log(3)) < 1e-9:
            self._head: Scheme = CantorScheme(3)
        else:
            self._head = GeneralizedCantorScheme.for_dimension(p)
        self._blocks: dict[int, FpScheme] = {}
        self.declared_hdim = p
        self.declared_fdim = p if p3_member(x) else 0.0

    def q_n(self, n: int) -> float:
        return self.p * (1.0 - 2.0**-n)

    def block(self, n: int) -> FpScheme:
        if n not in self._blocks:
            self._blocks[n] = FpScheme(self.q_n(n), self.x.row(n - 1), self.branching)
        return self._blocks[n]

    def head_union(self, k: int) -> IntervalUnion:
        return self._head.stage(k).map_onto(block_interval(0))

    def stage(self, k: int) -> IntervalUnion:
        if k < 0:
            raise ConstructionError("stage must be nonnegative")
        pieces = [(Fraction(0), Fraction(1, 2 ** (k + 1)))]
        pieces.extend(self.head_union(k).pieces)
        for n in range(1, k + 1):
            pieces.extend(self.block(n).stage(k).map_onto(block_interval(n)).pieces)
        return IntervalUnion.from_intervals(pieces)

    def stage_report(self, k: int) -> StageReport:
        return _tower_report(k, self.stage(k))

    def block_ladders(self, k: int) -> list[list[StageReport]]:
        out = [self._head.reports(1, k)]
        for n in range(1, k + 1):
            out.append(self.block(n).reports(1, k))
        return out


def salem_gap_stage(p: float, x: BitMatrix, k: int, branching: int = 3) -> IntervalUnion:
    return SalemGapScheme(p, x, branching).stage(k)


# ---------------------------------------------------------------------------
# encoding of sequence families through block dimensions
# ---------------------------------------------------------------------------


def _default_index_sets(count: int) -> list[frozenset[int]]:
    """Nonempty subsets of {1..n} in binary counting order.

    Indices start at 1 so that every subset weight sum stays within (0, 1]
    and the encoded set fits in one dimension.
    """
    n = 1
    while 2**n - 1 < count:
        n += 1
    out = []
    for code in range(1, count + 1):
        out.append(frozenset(i + 1 for i in range(n) if code >> i & 1))
    return out


def weihrauch_dimension_target(flags: Sequence[bool]) -> float:
    """sum of 2^-i over the 1-indexed positions whose sequence is eventually zero."""
    return float(sum(Fraction(1, 2**i) for i, ok in enumerate(flags, start=1) if ok))


class WeihrauchScheme(Scheme):
    """Encodes a finite sequence family into one closed set.

    Block k carries the construction at dimension p_k = sum(2^-i, i in F_k)
    driven by y_k, the pointwise max of the sequences indexed by F_k, so
    the encoded dimension reads the weight of the eventually-zero part of
    the family.  The singleton {0} closes the block tower.
    """

    def __init__(
        self,
        xs: Sequence[BitSequence],
        p_sets: Sequence[Iterable[int]] | None = None,
        branching: int = 3,
    ) -> None:
        self.xs = tuple(xs)
        if p_sets is None:
            sets = _default_index_sets(2 ** len(xs) - 1) if xs else []
        else:
            sets = [frozenset(int(i) for i in f) for f in p_sets]
            if any(not f for f in sets):
                raise ConstructionError("index sets must be nonempty")
        for f in sets:
            if any(i < 1 or i > len(self.xs) for i in f):
                raise ConstructionError("index set out of range for the sequence family")
        self.index_sets = sets
        self.branching = branching
        self.name = f"weihrauch:n={len(self.xs)}"
        self._blocks: list[FpScheme] = []
        for f in sets:
            p_k = float(sum(Fraction(1, 2**i) for i in f))
            y = ZERO_SEQ
            for i in f:
                y = y | self.xs[i - 1]
            self._blocks.append(FpScheme(p_k, y, branching))
        self.declared_hdim = weihrauch_dimension_target(
            [s.is_eventually_zero for s in self.xs]
        )
        self.declared_fdim = self.declared_hdim

    def block_union(self, k: int, depth: int) -> IntervalUnion:
        return self._blocks[k].stage(depth).map_onto(block_interval(k))

    def stage(self, depth: int) -> IntervalUnion:
        if depth < 0:
            raise ConstructionError("depth must be nonnegative")
        pieces: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
        for k in range(len(self._blocks)):
            pieces.extend(self.block_union(k, depth).pieces)
        return IntervalUnion.from_intervals(pieces)


def weihrauch_encode(
    p_sets: Sequence[Iterable[int]] | None,
    xs: Sequence[BitSequence],
    depth: int,
    branching: int = 3,
) -> IntervalUnion:
    return WeihrauchScheme(xs, p_sets, branching).stage(depth)


# ---------------------------------------------------------------------------
# radial lift
# ---------------------------------------------------------------------------


def radial_lift(A: IntervalUnion, d: int = 2, resolution=Fraction(1, 16)) -> BoxUnion:
    """Grid-box cover of {x : |x| in A} at the given cell side.

    Cells are tested exactly: a cell meets the radial set iff the interval
    of norms it spans overlaps some radius piece, compared through squared
    rationals.
    """
    if d != 2:
        raise ConstructionError("radial lift is implemented for d = 2")
    res = as_fraction(resolution)
    if res <= 0:
        raise ConstructionError("resolution must be positive")
    radii_sq = [(a * a, b * b) for a, b in A.pieces]
    if not radii_sq:
        return BoxUnion(2, [])
    n = math.ceil(1 / res)
    boxes = []
    for i in range(-n, n):
        x0, x1 = i * res, (i + 1) * res
        minx = Fraction(0) if x0 <= 0 <= x1 else min(abs(x0), abs(x1))
        maxx = max(abs(x0), abs(x1))
        minx2, maxx2 = minx * minx, maxx * maxx
        for j in range(-n, n):
            y0, y1 = j * res, (j + 1) * res
            miny = Fraction(0) if y0 <= 0 <= y1 else min(abs(y0), abs(y1))
            maxy = max(abs(y0), abs(y1))
            lo2 = minx2 + miny * miny
            hi2 = maxx2 + maxy * maxy
            if any(lo2 <= b2 and hi2 >= a2 for a2, b2 in radii_sq):
                boxes.append(((x0, x1), (y0, y1)))
    return BoxUnion(2, boxes, absorb=False)


def radial_reports(
    A: IntervalUnion, exponents: Iterable[int], d: int = 2
) -> list[StageReport]:
    """Box-cover counts of the radial lift at cell sides 2^-j.

    The reported scale is the cell side (the diagonal differs by a constant
    factor, which a log-log slope does not see).
    """
    out = []
    for j in exponents:
        res = Fraction(1, 2**j)
        cover = radial_lift(A, d, res)
        out.append(StageReport(j, len(cover), res, res))
    return out
