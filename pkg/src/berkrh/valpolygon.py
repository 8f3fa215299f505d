"""Valuation polygons.

For ``f = sum c_i T^i`` the polygon is the lower convex hull of the points
``(i, v_p(c_i))``.  The function ``V(s) = min_i (v_i + i*s)`` is the
valuation of ``f`` at the point ``eta_{0,s}``, i.e. minus ``log_p`` of the
Gauss seminorm on the disc of radius ``p**(-s)``.

Orientation: "inside" a disc of log-radius ``s`` means parameters
``s' > s`` (smaller radii).  The exponent achieving ``V`` just inside is
``imin(s)``, just outside it is ``imax(s)``.  A hull edge of slope ``-s``
joining exponents ``i < j`` accounts for exactly ``j - i`` roots of
valuation ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactval import INF, NEG_INF, DegenerateInputError, InputError, format_q, is_inf, padic_val

INSIDE = "inside"
OUTSIDE = "outside"


@dataclass(frozen=True)
class ValPolygon:
    points: tuple  # ((i, v_i), ...) sorted by exponent
    hull: tuple  # lower hull vertices, strictly increasing exponents

    @property
    def ord_low(self):
        return self.hull[0][0]

    @property
    def ord_high(self):
        return self.hull[-1][0]

    def segments(self):
        """Hull edges as ``(root_valuation, multiplicity)``, outermost roots last."""
        out = []
        for (i0, v0), (i1, v1) in zip(self.hull, self.hull[1:]):
            out.append((Fraction(v0 - v1, i1 - i0), i1 - i0))
        return out

    def breakpoints(self):
        return [s for s, _ in self.segments()]

    def to_json(self):
        return {
            "vertices": [[i, format_q(v)] for i, v in self.hull],
            "breakpoints": [format_q(s) for s in self.breakpoints()],
        }


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Andrew's monotone chain, lower half; collinear points are dropped."""
    hull = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return tuple(hull)


def build_polygon(f, p):
    """Valuation polygon of a nonzero Laurent polynomial.

    >>> from .laurent import LaurentPoly
    >>> build_polygon(LaurentPoly({0: 1, 1: 5, 2: 25}), 5).hull
    ((0, Fraction(0, 1)), (2, Fraction(2, 1)))
    """
    if f.is_zero():
        raise DegenerateInputError("the zero polynomial has no valuation polygon")
    pts = tuple((e, Fraction(padic_val(a, p))) for e, a in f.items())
    return ValPolygon(pts, lower_hull(pts))


def eval_V(P, s):
    """``V(s) = min over hull vertices of v_i + i*s``."""
    s = Fraction(s)
    return min(v + i * s for i, v in P.hull)


def achieving_range(P, s):
    """Smallest and largest exponents attaining ``V(s)``."""
    s = Fraction(s)
    vals = [(v + i * s, i) for i, v in P.hull]
    m = min(x for x, _ in vals)
    idx = [i for x, i in vals if x == m]
    return idx[0], idx[-1]


def dominant_exponent(P, s, side):
    lo, hi = achieving_range(P, s)
    if side == INSIDE:
        return lo
    if side == OUTSIDE:
        return hi
    raise InputError(f"side must be 'inside' or 'outside', got {side!r}")


def _in_interval(x, lo, hi, incl_lo, incl_hi):
    if lo is not NEG_INF and (x < lo or (x == lo and not incl_lo)):
        return False
    if hi is not INF and (x > hi or (x == hi and not incl_hi)):
        return False
    return True


def count_zero_valuations(P, s_lo=NEG_INF, s_hi=INF, incl_lo=True, incl_hi=True):
    """Number of nonzero finite roots with valuation in the given interval.

    Roots at ``T = 0`` (the ``ord_low`` shift) are never counted.
    """
    if s_lo is None:
        s_lo = NEG_INF
    if s_hi is None:
        s_hi = INF
    if not is_inf(s_lo) and not is_inf(s_hi) and s_lo > s_hi:
        raise InputError("empty interval: s_lo > s_hi")
    return sum(m for s, m in P.segments() if _in_interval(s, s_lo, s_hi, incl_lo, incl_hi))


def is_invertible_on(P, s_lo, s_hi):
    """True iff no root has valuation strictly between ``s_lo`` and ``s_hi``."""
    if not (is_inf(s_lo) or is_inf(s_hi)) and not s_lo < s_hi:
        raise InputError("is_invertible_on needs s_lo < s_hi")
    return count_zero_valuations(P, s_lo, s_hi, False, False) == 0


def zeros_in_disc(f, center, s, closed, p):
    """Zeros of the polynomial ``f`` (with multiplicity) in ``D(center, s)``.

    ``closed`` selects ``v(T - center) >= s`` versus ``> s``.
    """
    from .laurent import taylor_shift

    if f.is_zero():
        raise DegenerateInputError("the zero polynomial has infinitely many zeros")
    g = taylor_shift(f, center)
    P = build_polygon(g, p)
    return P.ord_low + count_zero_valuations(P, Fraction(s), INF, closed, True)


def zeros_outside_disc(f, s, closed, p):
    """Finite zeros of ``f`` with ``v(T) < -s`` (open) or ``<= -s`` (closed)."""
    if f.is_zero():
        raise DegenerateInputError("the zero polynomial has infinitely many zeros")
    P = build_polygon(f, p)
    return count_zero_valuations(P, NEG_INF, -Fraction(s), True, closed)
