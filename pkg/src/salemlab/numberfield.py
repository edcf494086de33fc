"""Gaussian-integer arithmetic and the planar well-approximable blocks.

Residue systems are enumerated through the fundamental parallelogram of
the multiplication lattice, so counts and normalizations are exact integer
comparisons throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .constructions import ConstructionError, StageReport, _dyadic_pow
from .geometry import BoxUnion
from .primes import is_prime


@dataclass(frozen=True)
class GaussianInt:
    """a + b*i with integer coefficients."""

    a: int
    b: int

    def __add__(self, o: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.a - o.a, self.b - o.b)

    def __mul__(self, o: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.a, -self.b)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.a, -self.b)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return f"GaussianInt({self.a}, {self.b})"


def norm(q: GaussianInt) -> int:
    """Field norm a^2 + b^2."""
    return q.a * q.a + q.b * q.b


def divides(q: GaussianInt, z: GaussianInt) -> bool:
    """Exact divisibility test: z/q integral iff N(q) divides both parts of z*conj(q)."""
    if q.is_zero:
        raise ConstructionError("division by zero")
    n = norm(q)
    w = z * q.conjugate()
    return w.a % n == 0 and w.b % n == 0


def congruent(r1: GaussianInt, r2: GaussianInt, q: GaussianInt) -> bool:
    return divides(q, r1 - r2)


def mult_matrix(q: GaussianInt) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix of multiplication by q on the basis {1, i}: [[a, -b], [b, a]]."""
    return ((q.a, -q.b), (q.b, q.a))


def mult_matrix_inv(q: GaussianInt) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Exact inverse (1/N) [[a, b], [-b, a]]."""
    n = norm(q)
    if n == 0:
        raise ConstructionError("zero has no multiplication inverse")
    return (
        (Fraction(q.a, n), Fraction(q.b, n)),
        (Fraction(-q.b, n), Fraction(q.a, n)),
    )


def normalized_center(q: GaussianInt, r: GaussianInt) -> tuple[Fraction, Fraction]:
    """A_q^-1 r as an exact rational point."""
    n = norm(q)
    return (Fraction(q.a * r.a + q.b * r.b, n), Fraction(-q.b * r.a + q.a * r.b, n))


def residue_system(q: GaussianInt) -> list[GaussianInt]:
    """The N(q) residue representatives r with A_q^-1 r in the half-open unit square.

    Enumerates integer points of the fundamental parallelogram of the
    lattice q*Z[i]; the half-open normalization picks exactly one
    representative per class.
    """
    if q.is_zero:
        raise ConstructionError("residue system of zero is undefined")
    n = norm(q)
    bound = abs(q.a) + abs(q.b)
    out = []
    for x in range(-bound, bound + 1):
        ax = q.a * x
        bx = -q.b * x
        for y in range(-bound, bound + 1):
            u = ax + q.b * y
            v = bx + q.a * y
            if 0 <= u < n and 0 <= v < n:
                out.append(GaussianInt(x, y))
    assert len(out) == n, f"residue count {len(out)} != N(q) = {n}"
    return out


def is_gaussian_prime(q: GaussianInt) -> bool:
    """Prime in Z[i]: prime norm, or an inert rational prime p = 3 mod 4."""
    if q.is_zero:
        return False
    if q.a == 0 or q.b == 0:
        p = abs(q.a) or abs(q.b)
        return is_prime(p) and p % 4 == 3
    return is_prime(norm(q))


def gaussian_primes_norm_range(lo: int, hi: int) -> Iterator[GaussianInt]:
    """Canonical Gaussian primes with norm in [lo, hi).

    One associate per prime (a >= 1, b >= 0); conjugate primes above split
    rational primes appear separately since they generate distinct ideals.
    """
    top = math.isqrt(max(hi - 1, 0))
    for a in range(1, top + 1):
        aa = a * a
        if aa >= hi:
            break
        if lo <= aa < hi and is_prime(a) and a % 4 == 3:
            yield GaussianInt(a, 0)
        for b in range(1, top + 1):
            n = aa + b * b
            if n >= hi:
                break
            if n >= lo and is_prime(n):
                yield GaussianInt(a, b)


def gaussian_jarnik_centers(alpha: float, j: int) -> dict[tuple[Fraction, Fraction], Fraction]:
    """Center -> half-side map for block j (norms in [4^j, 4^(j+1))).

    Duplicate centers arising from different primes keep the smaller box.
    """
    if alpha < 0:
        raise ConstructionError("alpha must be nonnegative")
    if j < 1:
        raise ConstructionError("block index must be >= 1")
    centers: dict[tuple[Fraction, Fraction], Fraction] = {}
    for q in gaussian_primes_norm_range(4**j, 4 ** (j + 1)):
        n = norm(q)
        if float(alpha).is_integer() and (2 + int(alpha)) % 2 == 0:
            half = Fraction(1, n ** ((2 + int(alpha)) // 2))
        else:
            half = _dyadic_pow(float(n), -(2.0 + alpha) / 2.0)
        for r in residue_system(q):
            c = normalized_center(q, r)
            old = centers.get(c)
            if old is None or half < old:
                centers[c] = half
    return centers


def gaussian_jarnik_stage(alpha: float, j: int) -> BoxUnion:
    """Block j of the planar construction as a union of closed squares.

    Each residue center carries the axis-aligned square circumscribing the
    ball of radius |q|^-(2+alpha), clamped to the unit square.  Boxes from
    coinciding centers are deduplicated.
    """
    boxes = []
    for (cx, cy), half in gaussian_jarnik_centers(alpha, j).items():
        x0, x1 = max(cx - half, Fraction(0)), min(cx + half, Fraction(1))
        y0, y1 = max(cy - half, Fraction(0)), min(cy + half, Fraction(1))
        boxes.append(((x0, x1), (y0, y1)))
    return BoxUnion(2, boxes, absorb=False)


def gaussian_block_reports(alpha: float, blocks: range) -> list[StageReport]:
    """Per-block center counts with the largest box side as the scale."""
    out = []
    for j in blocks:
        centers = gaussian_jarnik_centers(alpha, j)
        side = 2 * max(centers.values())
        out.append(StageReport(j, len(centers), 2 * min(centers.values()), side))
    return out
