"""Exact-rational interval and box unions with hyperspace predicates.

All set values are immutable after construction and every operation is a
pure function, so they are safe to share across threads.  Endpoints are
`fractions.Fraction` throughout: the distance and containment questions
asked by the staged constructions reduce to endpoint comparisons, which we
therefore answer exactly.  Floating point appears only where a quantity is
genuinely irrational (box diagonals).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class GeometryError(ValueError):
    """Domain error raised by geometric operations."""


@dataclass(frozen=True)
class HausdorffDistance:
    """Distance between two compact unions.

    `value` is a Fraction whenever `exact` is True (always the case in one
    dimension); otherwise a float from vertex sampling.
    """

    value: Union[Fraction, float]
    exact: bool = True

    def __post_init__(self) -> None:
        if self.value < 0:
            raise GeometryError("distance must be nonnegative")

    def __float__(self) -> float:
        return float(self.value)


class IntervalUnion:
    """Finite union of closed intervals with exact rational endpoints.

    Pieces are kept pairwise disjoint and sorted; degenerate pieces [a, a]
    are allowed.  The ambient interval (`space`) is carried explicitly so
    that the empty set has a well-defined "far apart" distance surrogate.
    """

    __slots__ = ("space", "pieces")

    def __init__(
        self,
        pieces: Iterable[tuple[RationalLike, RationalLike]],
        space: tuple[RationalLike, RationalLike] = (0, 1),
    ) -> None:
        lo, hi = as_fraction(space[0]), as_fraction(space[1])
        if lo >= hi:
            raise GeometryError("space bound must be nondegenerate")
        norm: list[tuple[Fraction, Fraction]] = []
        for a, b in pieces:
            fa, fb = as_fraction(a), as_fraction(b)
            if fa > fb:
                raise GeometryError(f"interval [{fa}, {fb}] reversed")
            if fa < lo or fb > hi:
                raise GeometryError(f"piece [{fa}, {fb}] outside space [{lo}, {hi}]")
            norm.append((fa, fb))
        norm.sort()
        for (a1, b1), (a2, _) in zip(norm, norm[1:]):
            if a2 <= b1:
                raise GeometryError(f"pieces [{a1},{b1}] and starting {a2} not disjoint")
        object.__setattr__(self, "space", (lo, hi))
        object.__setattr__(self, "pieces", tuple(norm))

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("IntervalUnion is immutable")

    @classmethod
    def from_intervals(
        cls,
        intervals: Iterable[tuple[RationalLike, RationalLike]],
        space: tuple[RationalLike, RationalLike] = (0, 1),
    ) -> "IntervalUnion":
        """Build a union from possibly overlapping closed intervals.

        Touching closed intervals merge ([0,1/2] and [1/2,1] become [0,1]).
        Pieces are clamped to the ambient space.
        """
        lo, hi = as_fraction(space[0]), as_fraction(space[1])
        clamped = []
        for a, b in intervals:
            fa, fb = max(as_fraction(a), lo), min(as_fraction(b), hi)
            if fa <= fb:
                clamped.append((fa, fb))
        clamped.sort()
        merged: list[list[Fraction]] = []
        for a, b in clamped:
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1][1] = b
            else:
                merged.append([a, b])
        return cls([(a, b) for a, b in merged], space=(lo, hi))

    @classmethod
    def empty(cls, space: tuple[RationalLike, RationalLike] = (0, 1)) -> "IntervalUnion":
        return cls([], space=space)

    @classmethod
    def full(cls, space: tuple[RationalLike, RationalLike] = (0, 1)) -> "IntervalUnion":
        return cls([space], space=space)

    # -- basic queries -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __len__(self) -> int:
        return len(self.pieces)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntervalUnion)
            and self.space == other.space
            and self.pieces == other.pieces
        )

    def __hash__(self) -> int:
        return hash((self.space, self.pieces))

    def __repr__(self) -> str:
        inner = " u ".join(f"[{a},{b}]" for a, b in self.pieces[:4])
        if len(self.pieces) > 4:
            inner += f" ... ({len(self.pieces)} pieces)"
        return f"IntervalUnion({inner or 'empty'})"

    def total_length(self) -> Fraction:
        return sum((b - a for a, b in self.pieces), ZERO)

    def contains_point(self, x: RationalLike) -> bool:
        fx = as_fraction(x)
        lo, hi = 0, len(self.pieces) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            a, b = self.pieces[mid]
            if fx < a:
                hi = mid - 1
            elif fx > b:
                lo = mid + 1
            else:
                return True
        return False

    def subset_of(self, other: "IntervalUnion") -> bool:
        """Exact containment: every piece of self lies in a piece of other."""
        j = 0
        for a, b in self.pieces:
            while j < len(other.pieces) and other.pieces[j][1] < a:
                j += 1
            if j >= len(other.pieces):
                return False
            oa, ob = other.pieces[j]
            if not (oa <= a and b <= ob):
                return False
        return True

    def point_distance(self, x: RationalLike) -> Fraction:
        """Exact d(x, self); raises on the empty set."""
        if self.is_empty:
            raise GeometryError("distance to the empty set is undefined")
        fx = as_fraction(x)
        best: Fraction | None = None
        for a, b in self.pieces:
            if a <= fx <= b:
                return ZERO
            d = a - fx if fx < a else fx - b
            if best is None or d < best:
                best = d
            if fx < a:
                break  # pieces sorted; later ones are farther
        assert best is not None
        return best

    # -- transformations ---------------------------------------------------

    def intersect_interval(self, a: RationalLike, b: RationalLike) -> "IntervalUnion":
        fa, fb = as_fraction(a), as_fraction(b)
        out = []
        for pa, pb in self.pieces:
            qa, qb = max(pa, fa), min(pb, fb)
            if qa <= qb:
                out.append((qa, qb))
        return IntervalUnion(out, space=self.space)

    def map_onto(self, target: tuple[RationalLike, RationalLike]) -> "IntervalUnion":
        """Affine image of a union living in [0, 1] onto the target interval."""
        lo, hi = as_fraction(target[0]), as_fraction(target[1])
        scale = hi - lo
        mapped = [(lo + a * scale, lo + b * scale) for a, b in self.pieces]
        space = (min(self.space[0], lo), max(self.space[1], hi))
        return IntervalUnion(mapped, space=space)

    def affine(self, a: RationalLike, t: RationalLike) -> "IntervalUnion":
        """Image under x -> a*x + t (a != 0); the space is mapped alongside."""
        fa, ft = as_fraction(a), as_fraction(t)
        if fa == 0:
            raise GeometryError("affine scale must be nonzero")
        ends = sorted((fa * self.space[0] + ft, fa * self.space[1] + ft))
        pieces = [tuple(sorted((fa * x + ft, fa * y + ft))) for x, y in self.pieces]
        return IntervalUnion(pieces, space=(ends[0], ends[1]))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "space": [format_fraction(self.space[0]), format_fraction(self.space[1])],
                "pieces": [[format_fraction(a), format_fraction(b)] for a, b in self.pieces],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "IntervalUnion":
        obj = json.loads(text)
        return cls(
            [(Fraction(a), Fraction(b)) for a, b in obj["pieces"]],
            space=(Fraction(obj["space"][0]), Fraction(obj["space"][1])),
        )


class BoxUnion:
    """Finite union of axis-aligned closed boxes with rational corners.

    Boxes are deduplicated and boxes fully contained in another are
    absorbed; partial overlaps are tolerated (block constructions prune
    them where disjointness matters).
    """

    __slots__ = ("dimension", "pieces")

    def __init__(
        self,
        dimension: int,
        pieces: Iterable[Sequence[tuple[RationalLike, RationalLike]]],
        absorb: bool = True,
    ) -> None:
        if dimension < 1:
            raise GeometryError("dimension must be positive")
        norm = []
        for box in pieces:
            if len(box) != dimension:
                raise GeometryError("box arity does not match dimension")
            cube = []
            for a, b in box:
                fa, fb = as_fraction(a), as_fraction(b)
                if fa > fb:
                    raise GeometryError("box side reversed")
                cube.append((fa, fb))
            norm.append(tuple(cube))
        norm = sorted(set(norm))
        if absorb and len(norm) > 1:
            norm = _absorb_contained(norm)
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "pieces", tuple(norm))

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("BoxUnion is immutable")

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __len__(self) -> int:
        return len(self.pieces)

    def __repr__(self) -> str:
        return f"BoxUnion(d={self.dimension}, {len(self.pieces)} boxes)"

    def to_json(self) -> str:
        return json.dumps(
            {
                "dimension": self.dimension,
                "pieces": [
                    [[format_fraction(a), format_fraction(b)] for a, b in box]
                    for box in self.pieces
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "BoxUnion":
        obj = json.loads(text)
        return cls(
            obj["dimension"],
            [[(Fraction(a), Fraction(b)) for a, b in box] for box in obj["pieces"]],
            absorb=False,
        )


def _absorb_contained(boxes: list[tuple]) -> list[tuple]:
    out = []
    for box in boxes:
        contained = False
        for other in boxes:
            if other is box or other == box:
                continue
            if all(oa <= a and b <= ob for (a, b), (oa, ob) in zip(box, other)):
                contained = True
                break
        if not contained:
            out.append(box)
    return out


# ---------------------------------------------------------------------------
# metric and hyperspace predicates
# ---------------------------------------------------------------------------


def one_sided_distance(src: IntervalUnion, dst: IntervalUnion) -> Fraction:
    """sup_{x in src} d(x, dst), exact.

    d(., dst) is piecewise linear with breakpoints at dst endpoints and at
    midpoints of dst gaps, so the sup over the closed union src is attained
    at a src endpoint or at a breakpoint lying inside src.
    """
    candidates = [e for piece in src.pieces for e in piece]
    for (_, b1), (a2, _) in zip(dst.pieces, dst.pieces[1:]):
        mid = (b1 + a2) / 2
        if src.contains_point(mid):
            candidates.append(mid)
    return max(dst.point_distance(x) for x in candidates)


def hausdorff_metric(A: IntervalUnion, B: IntervalUnion) -> HausdorffDistance:
    """Exact Hausdorff distance between two unions sharing a space bound.

    Empty-set cases follow the three-way metric definition, with the
    diameter of the ambient space standing in for the infinite distance.
    """
    if A.space != B.space:
        raise GeometryError("operands must share the same space bound")
    if A.is_empty and B.is_empty:
        return HausdorffDistance(ZERO)
    if A.is_empty or B.is_empty:
        return HausdorffDistance(A.space[1] - A.space[0])
    return HausdorffDistance(max(one_sided_distance(A, B), one_sided_distance(B, A)))


def _box_vertices(box) -> list[tuple[Fraction, ...]]:
    corners: list[tuple[Fraction, ...]] = [()]
    for a, b in box:
        nxt = [c + (a,) for c in corners]
        if b != a:
            nxt += [c + (b,) for c in corners]
        corners = nxt
    return corners


def hausdorff_metric_boxes(A: BoxUnion, B: BoxUnion, grid: int = 4) -> HausdorffDistance:
    """Approximate Hausdorff distance between box unions via vertex sampling.

    Samples a grid of points per box face and takes the max-min distance;
    always flagged inexact.  Exact d >= 2 distances are out of scope.
    """
    if A.dimension != B.dimension:
        raise GeometryError("box unions must share a dimension")
    if A.is_empty and B.is_empty:
        return HausdorffDistance(0.0, exact=False)
    if A.is_empty or B.is_empty:
        span = 0.0
        for U in (A, B):
            for box in U.pieces:
                span = max(span, max(float(b - a) for a, b in box), *(abs(float(v)) for a, b in box for v in (a, b)))
        return HausdorffDistance(2.0 * span if span else 1.0, exact=False)

    def sample_points(U: BoxUnion) -> list[tuple[float, ...]]:
        pts = []
        for box in U.pieces:
            axes = [
                [float(a) + (float(b - a)) * t / (grid - 1) for t in range(grid)]
                if b > a
                else [float(a)]
                for a, b in box
            ]
            stack: list[tuple[float, ...]] = [()]
            for axis in axes:
                stack = [s + (v,) for s in stack for v in axis]
            pts.extend(stack)
        return pts

    def point_to_union(p: tuple[float, ...], U: BoxUnion) -> float:
        best = math.inf
        for box in U.pieces:
            d2 = 0.0
            for v, (a, b) in zip(p, box):
                fa, fb = float(a), float(b)
                if v < fa:
                    d2 += (fa - v) ** 2
                elif v > fb:
                    d2 += (v - fb) ** 2
            best = min(best, d2)
        return math.sqrt(best)

    pa, pb = sample_points(A), sample_points(B)
    value = max(
        max(point_to_union(p, B) for p in pa),
        max(point_to_union(p, A) for p in pb),
    )
    return HausdorffDistance(value, exact=False)


def _sqrt_exact(x: Fraction) -> Union[Fraction, float]:
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return math.sqrt(n / d)


def _hull_2d(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Monotone-chain convex hull with exact cross products."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def diameter(A: Union[IntervalUnion, BoxUnion]) -> Union[Fraction, float]:
    """Euclidean diameter of the union; 0 for the empty set.

    One-dimensional unions give an exact Fraction.  Box unions give the
    exact square root when it is rational (Pythagorean cases), a float
    otherwise.
    """
    if isinstance(A, IntervalUnion):
        if A.is_empty:
            return ZERO
        return A.pieces[-1][1] - A.pieces[0][0]
    if A.is_empty:
        return ZERO
    vertices: list[tuple[Fraction, ...]] = []
    for box in A.pieces:
        vertices.extend(_box_vertices(box))
    vertices = list(set(vertices))
    if A.dimension == 2 and len(vertices) > 8:
        vertices = _hull_2d(vertices)  # type: ignore[arg-type]
    best = ZERO
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            d2 = sum((u - v) ** 2 for u, v in zip(vertices[i], vertices[j]))
            if d2 > best:
                best = d2
    return _sqrt_exact(best)


def _open_components(
    U: Iterable[tuple[RationalLike, RationalLike]],
) -> list[tuple[Fraction, Fraction]]:
    """Connected components of a finite union of open intervals.

    Open intervals merge only on strict overlap: (0,1/2) and (1/2,1) stay
    separate components because the shared endpoint is missing.
    """
    ivs = sorted(
        (as_fraction(a), as_fraction(b))
        for a, b in U
        if as_fraction(a) < as_fraction(b)
    )
    out: list[list[Fraction]] = []
    for a, b in ivs:
        if out and a < out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def subset_of_open(K: IntervalUnion, U: Iterable[tuple[RationalLike, RationalLike]]) -> bool:
    """Vietoris prebase predicate: K contained in the open union U."""
    comps = _open_components(U)
    for a, b in K.pieces:
        if not any(c < a and b < d for c, d in comps):
            return False
    return True


def intersects_open(K: IntervalUnion, U: Iterable[tuple[RationalLike, RationalLike]]) -> bool:
    """Vietoris prebase predicate: K meets the open union U."""
    for a, b in K.pieces:
        for c, d in ((as_fraction(c), as_fraction(d)) for c, d in U):
            if c < d and a < d and c < b:
                return True
    return False


def disjoint_from_compact(F: IntervalUnion, K: IntervalUnion) -> bool:
    """Fell prebase predicate: the closed unions share no point."""
    i = j = 0
    fp, kp = F.pieces, K.pieces
    while i < len(fp) and j < len(kp):
        a, b = fp[i]
        c, d = kp[j]
        if max(a, c) <= min(b, d):
            return False
        if b < d:
            i += 1
        else:
            j += 1
    return True


def simplex_partition_1d(A: IntervalUnion, grid: RationalLike) -> list[IntervalUnion]:
    """Slice A along the closed grid cells [n*grid, (n+1)*grid].

    Consecutive outputs overlap in at most one point.  A cell whose
    intersection is already contained in the previous output (a shared
    boundary point) is skipped, so re-unioning the outputs gives back A
    exactly without redundant singleton cells.
    """
    g = as_fraction(grid)
    if g <= 0:
        raise GeometryError("grid step must be positive")
    if A.is_empty:
        return []
    lo = A.pieces[0][0]
    hi = A.pieces[-1][1]
    n0 = lo // g
    out: list[IntervalUnion] = []
    n = n0
    while n * g <= hi:
        cell = A.intersect_interval(n * g, (n + 1) * g)
        if not cell.is_empty and not (out and cell.subset_of(out[-1])):
            out.append(cell)
        n += 1
    return out
