"""Discs, type-2 points and finite-type subdomains of P^1.

A disc centered at ``INFTY`` with log-radius ``s`` is read through the
coordinate ``1/T``: ``D(INFTY, s)`` is ``{v(1/T) > s}`` (open) or
``{v(1/T) >= s}`` (closed), together with the point at infinity.
Equivalently it is the complement of the disc ``D(0, -s)`` of the dual
kind.  Internally every disc is handled as a finite disc plus a
"complemented" flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactval import (
    INF,
    INFTY,
    DegenerateInputError,
    InputError,
    format_q,
    is_inf,
    padic_val,
    parse_center,
    parse_q,
)
from .laurent import LaurentPoly, RationalMap
from .valpolygon import INSIDE, build_polygon, dominant_exponent, eval_V, zeros_in_disc, zeros_outside_disc

OPEN = "open"
CLOSED = "closed"


@dataclass(frozen=True)
class DiscSpec:
    center: object  # Fraction or INFTY
    log_radius: Fraction
    kind: str

    def __post_init__(self):
        if self.kind not in (OPEN, CLOSED):
            raise InputError(f"disc kind must be 'open' or 'closed', got {self.kind!r}")
        if self.center is not INFTY:
            object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "log_radius", Fraction(self.log_radius))

    @property
    def closed(self):
        return self.kind == CLOSED

    def label(self):
        return f"{format_q(self.center)}@{format_q(self.log_radius)}"

    def to_json(self):
        return {"center": format_q(self.center), "log_radius": format_q(self.log_radius)}

    def sort_key(self):
        inf = self.center is INFTY
        return (inf, Fraction(0) if inf else self.center, self.log_radius, self.kind)


@dataclass(frozen=True)
class TypeTwoPoint:
    """``eta_{a,s}``; ``log_radius = INF`` gives the rational point ``a``."""

    center: object
    log_radius: object

    def __post_init__(self):
        if self.center is not INFTY:
            object.__setattr__(self, "center", Fraction(self.center))
        if not is_inf(self.log_radius):
            object.__setattr__(self, "log_radius", Fraction(self.log_radius))

    def finite_form(self):
        """Equivalent ``(a, s)`` with a rational center.

        ``eta_{INFTY,s}`` equals ``eta_{0,-s}``; the rational point at
        infinity has no finite form and returns None.
        """
        if self.center is INFTY:
            if is_inf(self.log_radius):
                return None
            return Fraction(0), -self.log_radius
        return self.center, self.log_radius


GAUSS_POINT = TypeTwoPoint(0, 0)


@dataclass(frozen=True)
class FtDomainP1:
    """``P^1`` minus finitely many pairwise disjoint open and closed discs."""

    removed_open: tuple = ()
    removed_closed: tuple = ()
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "removed_open", tuple(self.removed_open))
        object.__setattr__(self, "removed_closed", tuple(self.removed_closed))
        for d in self.removed_open:
            if d.kind != OPEN:
                raise InputError("removed_open entries must be open discs")
        for d in self.removed_closed:
            if d.kind != CLOSED:
                raise InputError("removed_closed entries must be closed discs")
        if self.genus < 0:
            raise InputError("genus must be nonnegative")

    @property
    def removed(self):
        return self.removed_open + self.removed_closed

    @property
    def m(self):
        return len(self.removed_open) + len(self.removed_closed)

    @classmethod
    def from_json(cls, obj, field="domain"):
        if not isinstance(obj, dict):
            raise InputError(f"{field}: expected an object")
        genus = obj.get("genus", 0)
        if isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
            raise InputError(f"{field}.genus: expected a nonnegative integer")
        discs = {}
        for key, kind in (("removed_open", OPEN), ("removed_closed", CLOSED)):
            items = obj.get(key, [])
            if not isinstance(items, list):
                raise InputError(f"{field}.{key}: expected a list")
            out = []
            for n, d in enumerate(items):
                where = f"{field}.{key}[{n}]"
                if not isinstance(d, dict) or "center" not in d or "log_radius" not in d:
                    raise InputError(f"{where}: expected {{center, log_radius}}")
                out.append(
                    DiscSpec(
                        parse_center(d["center"], f"{where}.center"),
                        parse_q(d["log_radius"], f"{where}.log_radius"),
                        kind,
                    )
                )
            discs[key] = out
        return cls(discs["removed_open"], discs["removed_closed"], genus)

    def to_json(self):
        return {
            "genus": self.genus,
            "removed_open": [d.to_json() for d in self.removed_open],
            "removed_closed": [d.to_json() for d in self.removed_closed],
        }


def closed_unit_disc():
    return FtDomainP1([DiscSpec(INFTY, 0, OPEN)])


def projective_line():
    return FtDomainP1()


# ultrametric disc combinatorics


def _finite_form(d):
    """``(center, s, closed, complemented)`` describing ``d``."""
    if d.center is INFTY:
        # {v(1/T) > s} u {inf} is the complement of {v(T) >= -s}
        return Fraction(0), -d.log_radius, not d.closed, True
    return d.center, d.log_radius, d.closed, False


def _finite_contains(a2, s2, c2, a1, s1, c1, p):
    """Is finite disc 1 contained in finite disc 2?"""
    dist = padic_val(a1 - a2, p)
    if c2:
        return dist >= s2 and s1 >= s2
    if c1:
        return dist > s2 and s1 > s2
    return dist > s2 and s1 >= s2


def disc_contains(outer, inner, p):
    """True iff ``inner`` is a subset of ``outer``.

    >>> disc_contains(DiscSpec(0, 0, CLOSED), DiscSpec(1, 1, CLOSED), 5)
    True
    """
    a2, s2, c2, comp2 = _finite_form(outer)
    a1, s1, c1, comp1 = _finite_form(inner)
    if not comp1 and not comp2:
        return _finite_contains(a2, s2, c2, a1, s1, c1, p)
    if comp1 and comp2:
        # P1 - C1 within P1 - C2  iff  C2 within C1
        return _finite_contains(a1, s1, c1, a2, s2, c2, p)
    if comp2:
        # finite C1 within P1 - C2 iff they are disjoint
        return _finite_disjoint(a1, s1, c1, a2, s2, c2, p)
    return False


def _finite_disjoint(a1, s1, c1, a2, s2, c2, p):
    return not (
        _finite_contains(a1, s1, c1, a2, s2, c2, p) or _finite_contains(a2, s2, c2, a1, s1, c1, p)
    )


def discs_disjoint(d1, d2, p):
    a1, s1, c1, comp1 = _finite_form(d1)
    a2, s2, c2, comp2 = _finite_form(d2)
    if comp1 and comp2:
        return False
    if not comp1 and not comp2:
        return _finite_disjoint(a1, s1, c1, a2, s2, c2, p)
    if comp1:
        # C2 misses P1 - C1 iff C2 within C1
        return _finite_contains(a1, s1, c1, a2, s2, c2, p)
    return _finite_contains(a2, s2, c2, a1, s1, c1, p)


def discs_complementary(d1, d2, p):
    """True iff the two discs partition P^1."""
    if d1.kind == d2.kind or not discs_disjoint(d1, d2, p):
        return False
    a1, s1, c1, comp1 = _finite_form(d1)
    a2, s2, c2, comp2 = _finite_form(d2)
    if comp1 == comp2:
        return False
    if comp1:
        a1, s1, c1, a2, s2, c2 = a2, s2, c2, a1, s1, c1
    # finite disc 1 versus the complement of finite disc 2
    return c1 == c2 and s1 == s2 and padic_val(a1 - a2, p) >= s1


def domain_validate(Y, p):
    """Check pairwise disjointness and nonemptiness; return ``Y``."""
    discs = Y.removed
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            if not discs_disjoint(discs[i], discs[j], p):
                raise InputError(
                    f"removed discs {discs[i].label()} ({discs[i].kind}) and "
                    f"{discs[j].label()} ({discs[j].kind}) overlap"
                )
    if len(discs) == 2 and discs_complementary(discs[0], discs[1], p):
        raise InputError("the removed discs cover P^1: the domain is empty")
    return Y


def euler_char(Y):
    """``2 - 2g`` when nothing is removed, else ``2 - 2g - m``."""
    if Y.m == 0:
        return 2 - 2 * Y.genus
    return 2 - 2 * Y.genus - Y.m


# points


def point_in_disc(x, d, p):
    """Membership of a rational point, ``INFTY``, or a type-2 point in ``d``."""
    if not isinstance(x, TypeTwoPoint):
        x = TypeTwoPoint(x, INF)
    a, s, closed, comp = _finite_form(d)
    if x.center is INFTY and is_inf(x.log_radius):
        return comp
    b, t = x.finite_form()
    dist = padic_val(b - a, p)
    if closed:
        inside = dist >= s and t >= s
    else:
        inside = dist > s and t > s
    return inside != comp


def point_in_domain(x, Y, p):
    return not any(point_in_disc(x, d, p) for d in Y.removed)


def infinity_in_domain(Y, p):
    return point_in_domain(INFTY, Y, p)


def vnorm_at_point(f, eta, p):
    """Valuation of ``f`` at the type-2 point ``eta`` (``-log_p |f(eta)|``)."""
    if isinstance(f, LaurentPoly):
        if f.is_zero():
            return INF
        k = max(0, -f.ord_low)
        f = RationalMap(f.shift_exponents(k), LaurentPoly.monomial(k))
    a, s = eta.finite_form() if isinstance(eta, TypeTwoPoint) else (Fraction(eta[0]), Fraction(eta[1]))
    if f.num.is_zero():
        return INF
    g = f.shift(a)
    return eval_V(build_polygon(g.num, p), s) - eval_V(build_polygon(g.den, p), s)


def zeros_in_domain(f, Y, p):
    """Finite zeros of the polynomial ``f`` lying in ``Y``."""
    if f.is_zero():
        raise DegenerateInputError("the zero polynomial has infinitely many zeros")
    total = f.degree
    for d in Y.removed:
        if d.center is INFTY:
            total -= zeros_outside_disc(f, d.log_radius, d.closed, p)
        else:
            total -= zeros_in_disc(f, d.center, d.log_radius, d.closed, p)
    return total


@dataclass(frozen=True)
class SkeletonProbe:
    d: int
    image_log_radius: Fraction
    image_center: object = field(default=None)


def skeleton_image_probe(phi, a, s, p):
    """Local skeleton degree and image log-radius of ``phi`` at ``eta_{a,s}``.

    The image is measured around ``phi(a)``.  If ``phi`` has a pole in the
    closed disc ``D(a, s)`` the reciprocal map is used instead and the
    image is read in the coordinate ``1/S`` (``image_center = INFTY``).
    """
    if phi.is_constant():
        raise DegenerateInputError("constant map has no skeleton image")
    a, s = Fraction(a), Fraction(s)
    g = phi.shift(a)
    if zeros_in_disc(phi.den, a, s, True, p) == 0:
        c = g(0)
        h = RationalMap(g.num - g.den.scale(c), g.den)
        center = phi(a)
    else:
        h = g.reciprocal()
        c = h(0)
        if c is INFTY:
            raise InputError("map has both zeros and poles near the probe: no annulus chart")
        h = RationalMap(h.num - h.den.scale(c), h.den)
        center = INFTY if c == 0 else 1 / c
        if zeros_in_disc(h.den, 0, s, True, p):
            raise InputError("no pole-free chart around the probe point")
    Pn, Pd = build_polygon(h.num, p), build_polygon(h.den, p)
    d = dominant_exponent(Pn, s, INSIDE) - dominant_exponent(Pd, s, INSIDE)
    return SkeletonProbe(d, eval_V(Pn, s) - eval_V(Pd, s), center)


def sample_points(Y, p, limit=3):
    """Deterministic rational points of ``Y`` (plus ``INFTY`` if it lies in ``Y``)."""
    cands = [Fraction(0), Fraction(1), Fraction(-1)]
    for k in range(1, 12):
        cands += [Fraction(p) ** k, Fraction(1, p**k), 1 + Fraction(p) ** k, 1 + Fraction(1, p**k)]
    cands += [Fraction(j) for j in range(2, min(p, 12) + 1)]
    for d in Y.removed:
        if d.center is not INFTY:
            k = int(d.log_radius // 1) - 1
            for j in (1, 2):
                cands.append(d.center + j * Fraction(p) ** k)
                cands.append(d.center + Fraction(p) ** (k + 3))
    out = []
    if point_in_domain(INFTY, Y, p):
        out.append(INFTY)
    for c in cands:
        if len(out) >= limit:
            break
        if c not in out and point_in_domain(c, Y, p):
            out.append(c)
    return out
