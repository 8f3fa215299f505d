"""Riemann-Hurwitz checks for morphisms between subdomains of P^1.

The user declares the morphism: the map, the source and target domains,
and which removed disc of the target each removed disc of the source
maps onto.  ``validate_morphism`` tests the necessary conditions that are
decidable from this data; ``check_rh`` then evaluates both sides of

    chi(Y) = deg * chi(X) - sum (e_P - 1) - sum_{TY} nu + sum_{T_in} nu.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .berkdomain import (
    GAUSS_POINT,
    OPEN,
    FtDomainP1,
    TypeTwoPoint,
    domain_validate,
    euler_char,
    sample_points,
    vnorm_at_point,
    zeros_in_disc,
)
from .exactval import INFTY, InputError, check_prime, format_q, is_prime, padic_val, parse_center, parse_q, residue
from .laurent import RationalMap, chart, wronskian
from .ramification import (
    VERIFIED,
    GermOrientationError,
    ProbeDisagreementError,
    TangentDirection,
    analyze_germ,
    count_critical,
    degree_over,
    germ_data,
    local_sum_check,
    reduction_at_point,
)
from .valpolygon import INSIDE, OUTSIDE, zeros_outside_disc


class VerificationError(ValueError):
    """A report was requested for data that failed validation."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class MorphismSpec:
    map: RationalMap
    domain: FtDomainP1
    codomain: FtDomainP1
    direction_images: dict  # index into domain.removed -> index into codomain.removed
    prime: int

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("morphism: expected an object")
        for key in ("map", "domain", "codomain", "p"):
            if key not in obj:
                raise InputError(f"morphism.{key}: missing")
        p = obj["p"]
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise InputError(f"morphism.p: expected a prime integer, got {p!r}")
        phi = RationalMap.from_json(obj["map"], "morphism.map")
        Y = FtDomainP1.from_json(obj["domain"], "morphism.domain")
        X = FtDomainP1.from_json(obj["codomain"], "morphism.codomain")
        raw = obj.get("direction_images", {})
        if not isinstance(raw, dict):
            raise InputError("morphism.direction_images: expected an object")
        images = {}
        for k, v in raw.items():
            try:
                images[int(k)] = int(v)
            except (TypeError, ValueError):
                raise InputError(
                    f"morphism.direction_images[{k!r}]: expected removed-disc indices"
                ) from None
        return cls(phi, Y, X, images, p)

    def to_json(self):
        return {
            "map": self.map.to_json(),
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "direction_images": {str(k): str(v) for k, v in sorted(self.direction_images.items())},
            "p": self.prime,
        }


def direction_of(disc):
    """The boundary direction of ``Y`` at a removed disc (TY or T_in)."""
    return TangentDirection(disc.center, disc.log_radius, INSIDE if disc.kind == OPEN else OUTSIDE)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Diagnostics:
    checks: list = field(default_factory=list)
    deg: int = None
    germs: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_json(self):
        return {
            "ok": self.ok,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }


def _boundary_value(phi, disc_y, disc_x, p):
    eta = TypeTwoPoint(disc_y.center, disc_y.log_radius)
    return vnorm_at_point(chart(phi, disc_x.center), eta, p)


def validate_morphism(M):
    """Run the decidable necessary conditions for ``M.map: Y -> X``."""
    diag = Diagnostics()
    p, phi, Y, X = M.prime, M.map, M.domain, M.codomain
    try:
        check_prime(p)
    except InputError as e:
        diag.add("prime", False, str(e))
        return diag
    for name, dom in (("domain", Y), ("codomain", X)):
        try:
            domain_validate(dom, p)
            diag.add(f"{name} valid", True)
        except InputError as e:
            diag.add(f"{name} valid", False, str(e))
    if not diag.ok:
        return diag
    if phi.is_constant():
        diag.add("nonconstant map", False, "the map is constant")
        return diag
    ydiscs, xdiscs = Y.removed, X.removed
    for i, dy in enumerate(ydiscs):
        lab = direction_of(dy).label()
        j = M.direction_images.get(i)
        if j is None or not 0 <= j < len(xdiscs):
            diag.add(f"assignment {lab}", False, f"removed disc {i} has no valid image index")
            continue
        dx = xdiscs[j]
        diag.add(
            f"kind {lab}",
            dy.kind == dx.kind,
            f"{dy.kind} disc assigned to {dx.kind} disc {dx.label()}",
        )
        val = _boundary_value(phi, dy, dx, p)
        diag.add(
            f"boundary {lab}",
            val == dx.log_radius,
            f"v(image) = {format_q(val)}, assigned log-radius {format_q(dx.log_radius)}",
        )
        try:
            rep = analyze_germ(phi, direction_of(dy), p, dx.center)
            diag.germs[i] = rep.germ
            diag.add(f"germ degree {lab}", rep.germ.d >= 1, f"d = {rep.germ.d}")
        except GermOrientationError as e:
            diag.add(f"germ degree {lab}", False, str(e))
    probes = sample_points(X, p)
    if probes:
        try:
            deg = degree_over(phi, Y, probes, p, X)
            diag.add("fibre degree", True, f"deg = {deg} over {len(probes)} probes")
        except (ProbeDisagreementError, InputError) as e:
            diag.add("fibre degree", False, str(e))
            return diag
    else:
        # thin annuli can have no rational points; the partition checks
        # below then force every target disc to agree with this value
        if not diag.ok or not xdiscs:
            return diag
        deg = sum(g.d for i, g in diag.germs.items() if M.direction_images.get(i) == 0)
        diag.add("fibre degree", deg >= 1, f"deg = {deg} from the boundary germs (no rational probe in X)")
    diag.deg = deg
    for j, dx in enumerate(xdiscs):
        ds = [diag.germs[i].d for i, jj in M.direction_images.items() if jj == j and i in diag.germs]
        diag.add(
            f"partition {dx.label()}",
            sum(ds) == deg,
            f"{' + '.join(map(str, ds)) or '0'} = {sum(ds)} vs deg {deg}",
        )
    return diag


def direction_sort_key(entry):
    """Order ``(label, nu)`` pairs by center, then radius, then side."""
    label = entry[0]
    try:
        center, rest = label.split("@")
        radius, side = rest.split(":")
        c = parse_center(center)
        return (0, c is INFTY, Fraction(0) if c is INFTY else c, parse_q(radius), side, entry[1])
    except (ValueError, InputError):
        return (1, False, Fraction(0), Fraction(0), label, entry[1])


@dataclass(frozen=True)
class RHReport:
    chi_Y: int
    chi_X: int
    deg: int
    ram_sum: int
    nu_out: tuple  # ((direction label, nu), ...) for TY
    nu_in: tuple  # same for T_in
    lhs: int
    rhs: int
    balanced: bool

    @classmethod
    def build(cls, chi_Y, chi_X, deg, ram_sum, nu_out, nu_in):
        nu_out = tuple(sorted(nu_out, key=direction_sort_key))
        nu_in = tuple(sorted(nu_in, key=direction_sort_key))
        rhs = deg * chi_X - ram_sum - sum(n for _, n in nu_out) + sum(n for _, n in nu_in)
        return cls(chi_Y, chi_X, deg, ram_sum, nu_out, nu_in, chi_Y, rhs, chi_Y == rhs)

    def to_json(self):
        return {
            "chi_Y": self.chi_Y,
            "chi_X": self.chi_X,
            "deg": self.deg,
            "ram_sum": self.ram_sum,
            "nu_out": [{"direction": d, "nu": n} for d, n in self.nu_out],
            "nu_in": [{"direction": d, "nu": n} for d, n in self.nu_in],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "balanced": self.balanced,
        }

    def equation(self):
        tout = sum(n for _, n in self.nu_out)
        tin = sum(n for _, n in self.nu_in)
        s = f"{self.lhs} = {self.deg}*{self.chi_X} - {self.ram_sum} - {tout}"
        if self.nu_in:
            s += f" + {tin}"
        return s


def check_rh(M, diagnostics=None):
    """Both sides of the Riemann-Hurwitz formula for a validated morphism."""
    diag = diagnostics or validate_morphism(M)
    if not diag.ok:
        names = ", ".join(c.name for c in diag.failures())
        raise VerificationError(f"morphism failed validation: {names}", diag)
    p, phi, Y, X = M.prime, M.map, M.domain, M.codomain
    nu_out, nu_in = [], []
    for i, dy in enumerate(Y.removed):
        dx = X.removed[M.direction_images[i]]
        g = germ_data(phi, direction_of(dy), dx.center, p)
        entry = (direction_of(dy).label(), g.nu)
        (nu_out if dy.kind == OPEN else nu_in).append(entry)
    return RHReport.build(
        euler_char(Y), euler_char(X), diag.deg, count_critical(phi, Y, p), nu_out, nu_in
    )


def candidate_assignments(phi, Y, X, p):
    """Every ``direction_images`` map passing all validation checks."""
    out = []
    n, m = len(Y.removed), len(X.removed)
    for combo in itertools.product(range(m), repeat=n):
        M = MorphismSpec(phi, Y, X, dict(enumerate(combo)), p)
        if validate_morphism(M).ok:
            out.append(M.direction_images)
    return out


@dataclass(frozen=True)
class SigmaChiReport:
    sigma: int
    chi: int
    ram: int
    expected: int
    equal: bool

    def to_json(self):
        return {
            "sigma": self.sigma,
            "chi": self.chi,
            "ram": self.ram,
            "expected": self.expected,
            "equal": self.equal,
        }


def ram_in_open_disc(phi, disc, p):
    """``sum (e_P - 1)`` over rational points of an open disc."""
    W = wronskian(phi)
    if disc.center is INFTY:
        return zeros_outside_disc(W, disc.log_radius, False, p) + wronskian(phi.invert_source()).ord_low
    return zeros_in_disc(W, disc.center, disc.log_radius, False, p)


def sigma_vs_chi(phi, removed_disc, image_center, p):
    """Compare sigma of the germ into an open disc with ``chi - 1 + ram``."""
    if removed_disc.kind != OPEN:
        raise InputError("sigma_vs_chi needs an open disc")
    sigma = germ_data(phi, TangentDirection(removed_disc.center, removed_disc.log_radius, INSIDE), image_center, p).sigma
    ram = ram_in_open_disc(phi, removed_disc, p)
    expected = 1 - 1 + ram
    return SigmaChiReport(sigma, 1, ram, expected, sigma == expected)


@dataclass(frozen=True)
class CharPReport:
    divisor: tuple  # ((label, sigma, count), ...)
    total: int
    expected: int
    deg: int
    status: str

    def sigma(self, label):
        for lab, s, _ in self.divisor:
            if lab == label:
                return s
        return 0

    def to_json(self):
        return {
            "divisor": [{"direction": lab, "sigma": s, "count": k} for lab, s, k in self.divisor],
            "total": self.total,
            "expected": self.expected,
            "deg": self.deg,
            "status": self.status,
        }


def char_p_divisor(phi, hint_centers, p, rational_only=False):
    """sigma at every residue direction of the Gauss point.

    ``phi`` must fix the Gauss point (good reduction of the closed unit
    disc onto itself).  Finite directions are labelled by their residue in
    ``0..p-1`` and the direction at infinity by ``inf``.
    """
    check_prime(p)
    c, t, *_ = reduction_at_point(phi, GAUSS_POINT, p)
    if t != 0 or padic_val(c, p) < 0:
        raise InputError("the map does not fix the Gauss point")
    hints = [Fraction(h) for h in hint_centers]
    for h in hints:
        if padic_val(h, p) < 0:
            raise InputError(f"hint {format_q(h)} is not in the closed unit disc")
    rep = local_sum_check(phi, GAUSS_POINT, hints, p, rational_only)
    div = []
    for d in rep.directions:
        lab = d.label
        if d.center is not None and d.center is not INFTY:
            lab = str(residue(d.center, p))
        div.append((lab, d.sigma, d.multiplicity))
    return CharPReport(tuple(div), rep.total, rep.expected, rep.deg, rep.status)


def certified(report):
    return report.status == VERIFIED
