"""Germ invariants, ramification counts and fibre degrees.

A germ is an annulus germ at ``eta_{a,s0}``: ``side="inside"`` runs into
the disc (log-radii just above ``s0``), ``side="outside"`` runs away from
it.  With ``G`` the map read in a source chart (``U = T - a``, or ``T = 1/U``
for the center ``INFTY``) and a target chart (``S - c`` or ``1/(S - c)``),
write ``G = N/D`` and ``W = N'D - ND'`` so that ``G' = W/D^2``.  Then for the
inside germ

    d   = imin_N - imin_D
    sig = imin_W - 2*imin_D
    nu  = sig - d + 1
    eps = V_W(s0) - 2*V_D(s0) + s0 - V_G(s0)

where ``eps`` is ``v(eps)`` once source and target coordinates are scaled so
that the germ boundary sits at radius 1.  Outside germs use ``imax`` and are
then reported in inverted orientation (``sig -> -sig + 2d - 2``), so every
reported germ has its boundary at the outer radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_degree, gf_factor, gf_gcd, gf_mul, gf_quo, gf_rem, gf_strip

from .berkdomain import TypeTwoPoint, infinity_in_domain, point_in_domain, zeros_in_domain
from .exactval import (
    INFTY,
    DegenerateInputError,
    InputError,
    format_q,
    is_inf,
    padic_val,
    unit_residue,
)
from .laurent import chart, taylor_shift, wronskian
from .valpolygon import INSIDE, OUTSIDE, achieving_range, build_polygon, eval_V

VERIFIED = "VERIFIED"
INCOMPLETE = "INCOMPLETE"


class GermOrientationError(ValueError):
    """The chosen image chart does not see the germ as an annulus germ (d <= 0)."""


class InternalConsistencyError(RuntimeError):
    """A proven inequality failed; indicates a bug, not bad input."""


class ProbeDisagreementError(ValueError):
    """Fibre counts differ between probes."""


@dataclass(frozen=True)
class TangentDirection:
    center: object  # Fraction or INFTY
    log_radius: Fraction
    side: str = INSIDE

    def __post_init__(self):
        if self.side not in (INSIDE, OUTSIDE):
            raise InputError(f"side must be 'inside' or 'outside', got {self.side!r}")
        if self.center is not INFTY:
            object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "log_radius", Fraction(self.log_radius))

    def label(self):
        return f"{format_q(self.center)}@{format_q(self.log_radius)}:{self.side}"


@dataclass(frozen=True)
class GermData:
    d: int
    sigma: int
    nu: int
    eps_val: Fraction

    def __post_init__(self):
        if self.nu != self.sigma - self.d + 1:
            raise InternalConsistencyError(
                f"nu = {self.nu} but sigma - d + 1 = {self.sigma - self.d + 1}"
            )
        if not is_inf(self.eps_val):
            object.__setattr__(self, "eps_val", Fraction(self.eps_val))

    @property
    def separable(self):
        """Trivial different at the boundary point (``|eps| = 1``)."""
        return self.eps_val == 0

    def to_json(self):
        return {"d": self.d, "sigma": self.sigma, "nu": self.nu, "eps_val": format_q(self.eps_val)}


def make_germ(d, sigma, eps_val=0):
    return GermData(d, sigma, sigma - d + 1, Fraction(eps_val))


IDENTITY_GERM = GermData(1, 0, 0, Fraction(0))


# charts


def source_chart(phi, center):
    """``phi`` in the local coordinate at ``center``."""
    if center is INFTY:
        return phi.invert_source()
    return phi.shift(center)


def _pick(P, s, side):
    lo, hi = achieving_range(P, s)
    return lo if side == INSIDE else hi


def find_image_chart(g, s0, side, p, max_steps=16):
    """Target chart ``(c, inverted)`` in which the germ of ``g`` is an annulus germ.

    ``g`` is already in source coordinates.  Starting from ``c = 0`` the
    dominant coefficient ratio is subtracted until the germ degree is
    nonzero; a negative degree means the image germ points toward
    infinity and the chart is inverted.
    """
    c = Fraction(0)
    num, den = g.num, g.den
    Pd = build_polygon(den, p)
    jd = _pick(Pd, s0, side)
    for _ in range(max_steps):
        nc = num - den.scale(c)
        if nc.is_zero():
            raise DegenerateInputError("constant map has no germ")
        Pn = build_polygon(nc, p)
        jn = _pick(Pn, s0, side)
        e = jn - jd
        if e > 0:
            return c, False
        if e < 0:
            return c, True
        c += nc.coeff(jn) / den.coeff(jd)
    raise InternalConsistencyError("image chart search did not terminate")


def _raw_invariants(G, s0, side, p):
    """``(d, sigma_raw, eps, t)`` for ``G`` already in both charts."""
    N, D = G.num, G.den
    if N.is_zero():
        raise DegenerateInputError("constant map has no germ")
    W = wronskian(G)
    Pn, Pd, Pw = build_polygon(N, p), build_polygon(D, p), build_polygon(W, p)
    jd = _pick(Pd, s0, side)
    d = _pick(Pn, s0, side) - jd
    sigma = _pick(Pw, s0, side) - 2 * jd
    t = eval_V(Pn, s0) - eval_V(Pd, s0)
    eps = eval_V(Pw, s0) - 2 * eval_V(Pd, s0) + s0 - t
    return d, sigma, eps, t


@dataclass(frozen=True)
class GermReport:
    germ: GermData
    image_center: object
    inverted: bool
    image_log_radius: Fraction


def analyze_germ(phi, direction, p, image_center=None, inverted=None):
    """Germ invariants plus the image chart and image boundary log-radius.

    ``image_center=None`` selects the chart automatically.  A rational
    ``image_center`` means the chart ``S - c``; ``INFTY`` means ``1/S``.
    ``inverted=True`` with a rational center gives ``1/(S - c)``.
    """
    if phi.is_constant():
        raise DegenerateInputError("constant map has no germ")
    g = source_chart(phi, direction.center)
    s0, side = direction.log_radius, direction.side
    if image_center is None:
        c, inv = find_image_chart(g, s0, side, p)
    elif image_center is INFTY:
        c, inv = Fraction(0), True
    else:
        c, inv = Fraction(image_center), bool(inverted)
    G = chart(g, c, inv)
    d, sigma, eps, t = _raw_invariants(G, s0, side, p)
    if d < 1:
        raise GermOrientationError(
            f"germ degree {d} < 1 at {direction.label()} in chart "
            f"{'1/' if inv else ''}(S - {format_q(c)}): wrong image center or orientation"
        )
    if side == OUTSIDE:
        sigma = -sigma + 2 * d - 2
    germ = GermData(d, sigma, sigma - d + 1, eps)
    if eps > padic_val(d, p):
        raise InternalConsistencyError(
            f"v(eps) = {format_q(eps)} exceeds v_p(d) = {padic_val(d, p)} at {direction.label()}"
        )
    # 1/S is the chart at infinity whether requested or found
    center = INFTY if image_center is INFTY or (inv and c == 0) else c
    return GermReport(germ, center, inv, t)


def germ_data(phi, direction, image_center=None, p=None):
    """Return ``GermData(d, sigma, nu, eps_val)`` of ``phi`` on the germ."""
    if p is None:
        raise InputError("germ_data needs the prime p")
    return analyze_germ(phi, direction, p, image_center).germ


def invert_germ(g, s0):
    """View an annulus germ from its other end, ``s0`` being the annulus width."""
    sigma = -g.sigma + 2 * g.d - 2
    return GermData(g.d, sigma, -g.nu, g.eps_val + g.nu * Fraction(s0))


def compose_germ(g_phi, g_psi):
    """Germ of ``psi o phi`` from the germs of ``phi`` and ``psi``."""
    return GermData(
        g_phi.d * g_psi.d,
        g_phi.d * g_psi.sigma + g_phi.sigma,
        g_phi.d * g_psi.nu + g_phi.nu,
        g_phi.eps_val + g_psi.eps_val,
    )


def different_value(g, s):
    return g.eps_val + g.nu * Fraction(s)


def discriminant_value(g, s, p):
    if g.nu == 0:
        return g.d * padic_val(g.d, p)
    return g.d * (g.eps_val + g.nu * Fraction(s))


# global counts


def count_critical(phi, Y, p):
    """``sum over rational points P of Y of (e_P - 1)``.

    Zeros of the Wronskian in ``Y`` (poles of order ``e`` contribute
    ``e - 1`` automatically) plus the ramification at infinity when it lies
    in ``Y``.
    """
    if phi.is_constant():
        raise DegenerateInputError("constant map")
    total = zeros_in_domain(wronskian(phi), Y, p)
    if infinity_in_domain(Y, p):
        total += wronskian(phi.invert_source()).ord_low
    return total


def fibre_count(phi, Y, c, p):
    """Number of preimages of ``c`` in ``Y`` with multiplicity."""
    G = chart(phi, c)
    if G.num.is_zero():
        raise DegenerateInputError("map is constant equal to the probe")
    n = zeros_in_domain(G.num, Y, p)
    if infinity_in_domain(Y, p) and G.den.degree > G.num.degree:
        n += G.den.degree - G.num.degree
    return n


def degree_over(phi, Y, probes, p, X=None):
    """Common fibre cardinality over the probes; they must all agree.

    If the codomain ``X`` is given every probe is required to lie in it.
    """
    if phi.is_constant():
        raise DegenerateInputError("constant map")
    if not probes:
        raise InputError("degree_over needs at least one probe")
    counts = []
    for c in probes:
        if X is not None and not point_in_domain(c, X, p):
            raise InputError(f"probe {format_q(c)} lies outside the codomain")
        counts.append(fibre_count(phi, Y, c, p))
    if len(set(counts)) != 1:
        detail = ", ".join(f"{format_q(c)}: {n}" for c, n in zip(probes, counts))
        raise ProbeDisagreementError(f"fibre counts disagree ({detail})")
    if counts[0] < 1:
        raise ProbeDisagreementError("probes have empty fibres: not in the image")
    return counts[0]


# reduction at a type-2 point


def _gf(coeffs_low_first, p):
    return gf_strip([int(c) % p for c in reversed(coeffs_low_first)])


def reduce_at(f, a0, s0, p):
    """Normalized reduction of the polynomial ``f`` at ``eta_{a0,s0}``.

    Returns a dense F_p polynomial (highest degree first) in the residue
    coordinate ``u``; its roots, with multiplicity, count the zeros of ``f``
    in the corresponding residue classes.
    """
    g = taylor_shift(f, a0)
    P = build_polygon(g, p)
    V = eval_V(P, s0)
    dense = [0] * (g.degree + 1)
    for i, c in g.items():
        if padic_val(c, p) + i * s0 == V:
            dense[i] = unit_residue(c, p)
    return _gf(dense, p)


def _mult(h, f, p):
    """Multiplicity of the irreducible ``h`` in ``f`` over F_p."""
    m = 0
    while gf_degree(f) >= gf_degree(h) and not gf_rem(f, h, p, ZZ):
        f = gf_quo(f, h, p, ZZ)
        m += 1
    return m


def reduction_at_point(phi, x, p, max_steps=64):
    """Reduction of ``phi`` at ``x = eta_{a0,s0}``: ``(c, t, A, B, g, deg)``.

    ``A/B`` is the reduced map in the residue coordinates of ``x`` and of
    the image point ``eta_{c,t}``; ``g = gcd(A, B)``; ``deg = deg(phi, x)``.
    """
    a0, s0 = x.finite_form()
    N, D = phi.num, phi.den
    B = reduce_at(D, a0, s0, p)
    Dsh = taylor_shift(D, a0)
    Pd = build_polygon(Dsh, p)
    c = Fraction(0)
    for _ in range(max_steps):
        Nc = N - D.scale(c)
        if Nc.is_zero():
            raise DegenerateInputError("constant map")
        A = reduce_at(Nc, a0, s0, p)
        g = gf_gcd(A, B, p, ZZ)
        deg = max(gf_degree(gf_quo(A, g, p, ZZ)), gf_degree(gf_quo(B, g, p, ZZ)))
        Nsh = taylor_shift(Nc, a0)
        Vn, Vd = eval_V(build_polygon(Nsh, p), s0), eval_V(Pd, s0)
        if deg >= 1:
            return c, Vn - Vd, A, B, g, deg
        # constant reduction: subtract a rational lift of the constant
        for i, cd in Dsh.items():
            cn = Nsh.coeff(i)
            if cn and padic_val(cd, p) + i * s0 == Vd and padic_val(cn, p) + i * s0 == Vn:
                c += cn / cd
                break
        else:
            raise InternalConsistencyError("constant reduction without a common index")
    raise InternalConsistencyError("image point search did not terminate")


def local_degree(phi, x, p):
    """``deg(phi, x)``: degree of the reduction of ``phi`` at ``x``."""
    return reduction_at_point(phi, x, p)[5]


@dataclass(frozen=True)
class DirectionSigma:
    label: str
    sigma: int
    multiplicity: int = 1  # number of conjugate directions sharing this sigma
    center: object = None  # rational center when the class has one, or INFTY

    def to_json(self):
        return {"direction": self.label, "sigma": self.sigma, "count": self.multiplicity}


@dataclass(frozen=True)
class LocalSumReport:
    point: TypeTwoPoint
    directions: tuple
    total: int
    expected: int
    deg: int
    status: str
    image_center: Fraction = None
    image_log_radius: Fraction = None
    notes: tuple = field(default=())

    def sigma_of(self, label):
        for d in self.directions:
            if d.label == label:
                return d.sigma
        return 0

    def to_json(self):
        a, s = self.point.finite_form()
        return {
            "point": {"center": format_q(a), "log_radius": format_q(s)},
            "deg": self.deg,
            "directions": [d.to_json() for d in self.directions],
            "total": self.total,
            "expected": self.expected,
            "status": self.status,
        }


def _poly_label(h, p):
    terms = []
    n = len(h) - 1
    for k, c in enumerate(h):
        e = n - k
        c = int(c)
        if not c:
            continue
        mono = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
        coef = str(c) if (c != 1 or e == 0) else ""
        terms.append(coef + mono)
    return "+".join(terms)


def local_sum_check(phi, x, hint_centers=(), p=None, rational_only=False):
    """Sum of sigma over the tangent directions at ``x = eta_{a0,s0}``.

    Finite directions are residue classes of ``x``.  Every class whose
    sigma can be nonzero is a root of the reduction of ``W``, ``N - cD`` or
    ``D``; these reductions are factored over F_p, so each conjugacy class
    of directions is found.  Classes with a rational center (and the hinted
    ones) are also computed exactly from the shifted polygons and must
    agree with the reduction count.  The direction toward infinity is
    computed by inverting the source coordinate.

    With ``rational_only=True`` only classes with a rational center are
    summed, so the identity may fail to certify (status INCOMPLETE).  When
    nothing was skipped a failed identity is a bug and raises.
    """
    if p is None:
        raise InputError("local_sum_check needs the prime p")
    if phi.is_constant():
        raise DegenerateInputError("constant map")
    if not isinstance(x, TypeTwoPoint):
        x = TypeTwoPoint(*x)
    a0, s0 = x.finite_form()
    c, t, A, B, g, deg = reduction_at_point(phi, x, p)
    W = wronskian(phi)
    Wr = reduce_at(W, a0, s0, p)
    B1 = gf_quo(B, g, p, ZZ)
    integral = s0.denominator == 1
    scale = Fraction(p) ** int(s0) if integral else None

    prod = gf_mul(gf_mul(Wr, A, p, ZZ), B, p, ZZ)
    factors = [[int(x_) for x_ in h] for h, _ in gf_factor(prod, p, ZZ)[1]] if gf_degree(prod) > 0 else []

    hinted = {}
    for h in hint_centers:
        h = Fraction(h)
        if padic_val(h - a0, p) >= s0:
            r = unit_residue(h - a0, p) if (h != a0 and padic_val(h - a0, p) == s0) else 0
            hinted.setdefault(r, h)

    dirs = []
    notes = []
    finite_total = 0
    seen_rational = set()
    for h in factors:
        k = len(h) - 1
        to_inf = _mult(h, B1, p) > 0
        sig = _mult(h, Wr, p) - 2 * (_mult(h, A, p) if to_inf else _mult(h, B, p))
        root = (-h[1]) % p if k == 1 else None
        rational = k == 1 and (integral or root == 0)
        if rational:
            seen_rational.add(root)
            center = hinted.get(root, a0 + root * scale if integral else a0)
            exact = _class_sigma(phi, center, s0, p)
            if exact != sig:
                raise InternalConsistencyError(
                    f"class {format_q(center)}: polygon sigma {exact} != reduction sigma {sig}"
                )
            dirs.append(DirectionSigma(format_q(center), sig, 1, center))
            finite_total += sig
        else:
            if rational_only:
                notes.append(f"skipped non-rational class {_poly_label(h, p)}")
                continue
            lab = f"root({_poly_label(h, p)})"
            dirs.append(DirectionSigma(lab, sig, k, None))
            finite_total += k * sig
    for r, h in hinted.items():
        if r not in seen_rational:
            center = h
            dirs.append(DirectionSigma(format_q(center), _class_sigma(phi, center, s0, p), 1, center))
            finite_total += dirs[-1].sigma
    outer = _outer_sigma(phi, a0, s0, p)
    hint_set = set(hinted.values())
    dirs = [d for d in dirs if d.sigma != 0 or d.center in hint_set]
    dirs.sort(key=lambda d: (d.center is None, d.center if d.center is not None else 0, d.label))
    dirs.append(DirectionSigma("inf", outer, 1, INFTY))
    total = finite_total + outer
    expected = 2 * deg - 2
    if total != expected and not notes:
        raise InternalConsistencyError(
            f"complete enumeration at {x} gives sum {total}, expected 2*{deg} - 2"
        )
    status = VERIFIED if total == expected else INCOMPLETE
    return LocalSumReport(x, tuple(dirs), total, expected, deg, status, c, t, tuple(notes))


def _class_sigma(phi, center, s0, p):
    return germ_data(phi, TangentDirection(center, s0, INSIDE), None, p).sigma


def _outer_sigma(phi, a0, s0, p):
    g = phi.shift(a0).invert_source()
    return germ_data(g, TangentDirection(0, -s0, INSIDE), None, p).sigma
