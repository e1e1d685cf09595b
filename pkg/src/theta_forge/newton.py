"""Newton polygons at ``t = infinity`` and the single-slope irreducibility test.

With ``z = 1/t`` the valuation of a polynomial coefficient is ``-deg``.  The
polygon of an operator ``sum a_i Δ^i`` is the convex hull of the regions
``{0 <= x <= i, y >= v(a_i)}``, so its lower boundary starts at
``(0, min v)`` and only has non-negative slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffop import DOperator, ThetaOperator
from .errors import ZeroScalar
from .ratpoly import Poly

Point = tuple[int, int]


@dataclass(frozen=True)
class Slope:
    value: Fraction
    multiplicity: int


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[Point, ...]
    hull: tuple[Point, ...]
    slopes: tuple[Slope, ...]

    def slope_values(self) -> list[Fraction]:
        return [s.value for s in self.slopes]


@dataclass(frozen=True)
class IrreducibilityVerdict:
    verdict: str
    slope: Fraction | None = None
    denominator: int | None = None

    @property
    def irreducible(self) -> bool:
        return self.verdict == "Irreducible"


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> list[Point]:
    """Lower convex hull, left to right, without collinear interior vertices."""
    best: dict[int, int] = {}
    for x, y in points:
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull: list[Point] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def polygon_from_points(points: Sequence[Point]) -> NewtonPolygon:
    points = tuple(sorted(points))
    if not points:
        return NewtonPolygon((), (), ())
    ymin = min(y for _, y in points)
    hull = lower_hull(list(points) + [(0, ymin)])
    slopes = tuple(
        Slope(Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(points, tuple(hull), slopes)


def theta_points(op: ThetaOperator) -> list[Point]:
    return [(i, -a.deg) for i, a in enumerate(op.coeffs) if a]


def d_points(op: DOperator) -> list[Point]:
    return [(i, -q.deg + i) for i, q in enumerate(op.coeffs) if q]


def polygon_theta(op: ThetaOperator) -> NewtonPolygon:
    return polygon_from_points(theta_points(op))


def polygon_d(op: DOperator) -> NewtonPolygon:
    """Polygon read directly off the D-basis degrees (``D^i ~ t^-i Δ^i``)."""
    return polygon_from_points(d_points(op))


def katz(polygon: NewtonPolygon, m: int) -> IrreducibilityVerdict:
    distinct = {s.value for s in polygon.slopes}
    if len(distinct) == 1:
        lam = distinct.pop()
        if lam.denominator == m:
            return IrreducibilityVerdict("Irreducible", lam, lam.denominator)
    return IrreducibilityVerdict("Unknown")


def verdict(op) -> IrreducibilityVerdict:
    poly = polygon_theta(op) if isinstance(op, ThetaOperator) else polygon_d(op)
    return katz(poly, op.order)


def scale_invariance_check(op: ThetaOperator, q: Poly) -> bool:
    if q.is_zero():
        raise ZeroScalar("scaling by the zero polynomial")
    return polygon_theta(op).slopes == polygon_theta(op.scale(q)).slopes
