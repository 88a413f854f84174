"""p-adic Newton polygons of L-polynomials."""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from sympy import multiplicity

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    points: tuple    # (i, v_p(a_i)) for a_i != 0
    vertices: tuple
    slopes: tuple    # ((slope, horizontal length), ...) in increasing order

    @property
    def slope_multiset(self):
        return Counter({s: n for s, n in self.slopes})

    def is_symmetric(self):
        ms = self.slope_multiset
        return all(ms[1 - s] == n for s, n in ms.items())

    def slopes_as_records(self):
        return [{"num": s.numerator, "den": s.denominator, "mult": n} for s, n in self.slopes]


def valuation(a, p):
    """v_p of a nonzero integer."""
    return int(multiplicity(p, abs(a)))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Monotone chain over points sorted by abscissa; collinear points are dropped."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(L):
    p = L.p
    points = tuple((i, valuation(a, p)) for i, a in enumerate(L.coefficients) if a)
    vertices = tuple(lower_hull(points))
    slopes = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        slope = Fraction(y1 - y0, x1 - x0)
        if slopes and slopes[-1][0] == slope:
            slopes[-1] = (slope, slopes[-1][1] + x1 - x0)
        else:
            slopes.append((slope, x1 - x0))
    return NewtonPolygon(p, points, vertices, tuple(slopes))


def valuation_test(L):
    """2 v_p(a_i) >= i for every nonzero a_i with 0 < i < 2g."""
    top = len(L.coefficients) - 1
    return all(2 * valuation(a, L.p) >= i
               for i, a in enumerate(L.coefficients) if a and 0 < i < top)


def is_supersingular(L):
    polygon = newton_polygon(L)
    by_slopes = all(s == HALF for s, _ in polygon.slopes)
    if by_slopes != valuation_test(L):
        raise AssertionError(f"slope test and valuation test disagree on {L}")
    return by_slopes


def p_rank(L):
    return newton_polygon(L).slope_multiset[Fraction(0)]
