"""Acceptance suite: ten end-to-end criteria, all at exact equality.

Each check returns ``(ok, detail)`` and the test prints one PASS/FAIL line.
Run ``pytest tests/test_acceptance.py -v -s`` or execute this file directly.
"""

import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from berkrh.berkdomain import (
    CLOSED,
    GAUSS_POINT,
    OPEN,
    DiscSpec,
    FtDomainP1,
    closed_unit_disc,
    euler_char,
    projective_line,
    skeleton_image_probe,
)
from berkrh.cli import run
from berkrh.exactval import INF, INFTY, NEG_INF, padic_val
from berkrh.fixtures import f2_split_graph, frobenius_maps, frobenius_morphisms
from berkrh.laurent import LaurentPoly, RationalMap, T, compose_maps
from berkrh.ledger import T_IN, TY, Edge, EdgeEnd, ExternalEnd, TriangGraph, Vertex, assemble_global_rh, graph_from_report, vertex_residuals
from berkrh.ramification import (
    VERIFIED,
    TangentDirection,
    compose_germ,
    count_critical,
    germ_data,
    invert_germ,
    local_sum_check,
)
from berkrh.rhcheck import char_p_divisor, certified, check_rh, sigma_vs_chi
from berkrh.valpolygon import INSIDE, OUTSIDE, build_polygon, count_zero_valuations, eval_V

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
PRIMES = (2, 3, 5, 7)
SEED = 20240611


def _q(rng, num=9, den=9, nonzero=True):
    while True:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def _poly(rng, deg, num=9, den=9):
    cs = [_q(rng, num, den, nonzero=False) for _ in range(deg)] + [_q(rng, num, den)]
    return LaurentPoly.from_coeff_list(cs)


# 1. Frobenius lifts


def check_frobenius():
    bad = []
    t_inf = TangentDirection(INFTY, 0, INSIDE)
    for p in PRIMES:
        m1, m2 = frobenius_morphisms(p)
        r1, r2 = check_rh(m1), check_rh(m2)
        g2 = germ_data(m2.map, t_inf, INFTY, p)
        got = (r1.ram_sum, r1.nu_out[0][1], r1.equation(), r1.balanced)
        want = (p - 1, 0, f"1 = {p}*1 - {p - 1} - 0", True)
        if got != want:
            bad.append(("f1", p, got))
        got = (r2.ram_sum, g2.sigma, r2.nu_out[0][1], r2.equation(), r2.balanced)
        want = (0, 2 * p - 2, p - 1, f"1 = {p}*1 - 0 - {p - 1}", True)
        if got != want:
            bad.append(("f2", p, got))
    return not bad, f"f1, f2 balanced for p in {PRIMES}" if not bad else f"mismatch {bad}"


# 2. Local sum identity at the Gauss point


def check_local_sum(n=200):
    rng = random.Random(SEED + 2)
    full = partial = 0
    bad = []
    for k in range(n):
        p = PRIMES[k % len(PRIMES)]
        f = _poly(rng, rng.randint(1, 6), num=3, den=3)
        if f.degree < 1:
            f = f + T
        phi = RationalMap(f)
        for mode in (False, True):
            rep = local_sum_check(phi, GAUSS_POINT, (), p, rational_only=mode)
            if rep.status == VERIFIED:
                if rep.total != 2 * rep.deg - 2:
                    bad.append((str(f), p, rep.total, rep.deg))
                if mode:
                    partial += 1
                else:
                    full += 1
    ok = not bad and full * 10 > 9 * n
    return ok, f"certified {full}/{n} (rational classes only: {partial}/{n}); violations {len(bad)}"


# 3. Germ composition and inversion


def _binomial(rng, p):
    m = rng.randint(1, 4)
    a, b = _q(rng, 30, 30), _q(rng, 30, 30) * Fraction(p) ** rng.randint(0, 3)
    return m, a, b, RationalMap(LaurentPoly({m: a, m + 1: b}))


def check_germ_laws(n=500):
    rng = random.Random(SEED + 3)
    bad = []
    for _ in range(n):
        p = rng.choice(PRIMES)
        m, a, b, phi = _binomial(rng, p)
        _, _, _, psi = _binomial(rng, p)
        s = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        g1 = germ_data(phi, TangentDirection(0, s, INSIDE), 0, p)
        s_img = eval_V(build_polygon(phi.num, p), s)
        g2 = germ_data(psi, TangentDirection(0, s_img, INSIDE), 0, p)
        explicit = germ_data(compose_maps(psi, phi), TangentDirection(0, s, INSIDE), 0, p)
        if explicit != compose_germ(g1, g2):
            bad.append(("compose", p, str(phi), str(psi), s))
        # the annulus (s, s + w) must avoid the critical and zero circles of phi
        walls = [padic_val(a, p) - padic_val(b, p), padic_val(m * a, p) - padic_val((m + 1) * b, p)]
        w = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        above = [x - s for x in walls if x > s]
        if above:
            w = min(w, min(above))
        far = germ_data(phi, TangentDirection(0, s + w, OUTSIDE), 0, p)
        inv = invert_germ(g1, w)
        if far != inv or (inv.sigma, inv.nu) != (-g1.sigma + 2 * g1.d - 2, -g1.nu):
            bad.append(("invert", p, str(phi), s, w))
    return not bad, f"{n} pairs, composition and inversion exact" if not bad else f"{len(bad)} failures, first {bad[0]}"


# 4. Valuation polygon oracle


def _count(vals, lo, hi, incl_lo, incl_hi):
    def inside(v):
        ok_lo = v > lo or (incl_lo and v == lo)
        ok_hi = v < hi or (incl_hi and v == hi)
        return ok_lo and ok_hi

    return sum(1 for v in vals if inside(v))


def check_polygon_oracle(n=500):
    rng = random.Random(SEED + 4)
    bad = []
    for _ in range(n):
        p = rng.choice(PRIMES)
        roots = [_q(rng, 20, 20) * Fraction(p) ** rng.randint(-3, 3) for _ in range(rng.randint(1, 6))]
        c = _q(rng, 20, 20) * Fraction(p) ** rng.randint(-2, 2)
        f = LaurentPoly.constant(c)
        for r in roots:
            f = f * (T - r)
        P = build_polygon(f, p)
        vals = [padic_val(r, p) for r in roots]
        lo = rng.choice([NEG_INF, Fraction(rng.randint(-8, 4), rng.randint(1, 3))])
        hi = rng.choice([INF, Fraction(rng.randint(-4, 8), rng.randint(1, 3))])
        if lo is not NEG_INF and hi is not INF and lo > hi:
            lo, hi = hi, lo
        inc = (rng.random() < 0.5, rng.random() < 0.5)
        if count_zero_valuations(P, lo, hi, *inc) != _count(vals, lo, hi, *inc):
            bad.append(("count", p, str(f), lo, hi, inc))
        s = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        direct = min(padic_val(ci, p) + i * s for i, ci in f.items())
        if eval_V(P, s) != direct:
            bad.append(("V", p, str(f), s))
    return not bad, f"{n} factored polynomials agree" if not bad else f"{len(bad)} failures, first {bad[0]}"


# 5. Classical Riemann-Hurwitz on P^1


def check_classical_rh(n=200):
    rng = random.Random(SEED + 5)
    bad = []
    tested = 0
    while tested < n:
        p = rng.choice(PRIMES)
        phi = RationalMap(_poly(rng, rng.randint(0, 6)), _poly(rng, rng.randint(0, 6)))
        if phi.is_constant():
            continue
        tested += 1
        total = count_critical(phi, projective_line(), p)
        if total != 2 * phi.degree - 2:
            bad.append((str(phi), p, total))
    return not bad, f"{n} reduced maps, ram = 2 deg - 2" if not bad else f"{len(bad)} failures, first {bad[0]}"


# 6. Euler characteristics


def check_euler():
    got = [euler_char(projective_line()), euler_char(closed_unit_disc())]
    ann = FtDomainP1([DiscSpec(INFTY, 0, OPEN)], [DiscSpec(0, 1, CLOSED)])
    got.append(euler_char(ann))
    want = [2, 1, 0]
    for m in range(7):
        discs = [DiscSpec(j, 1, OPEN) for j in range(m)]
        got.append(euler_char(FtDomainP1(discs)))
        want.append(2 - m)
    return got == want, f"chi = {got}"


# 7. sigma versus chi - 1 + ram


def check_sigma_chi(n=100):
    rng = random.Random(SEED + 7)
    disc = DiscSpec(INFTY, 0, OPEN)
    bad = []
    for p in PRIMES:
        for f in frobenius_maps(p):
            r = sigma_vs_chi(f, disc, INFTY, p)
            if not r.equal:
                bad.append((str(f), p, r))
    for _ in range(n):
        p = rng.choice(PRIMES)
        deg = rng.randint(1, 6)
        cs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([1, -1, 2, 3]) if p > 3 else 1]
        phi = RationalMap(LaurentPoly.from_coeff_list(cs))
        r = sigma_vs_chi(phi, disc, INFTY, p)
        if not r.equal:
            bad.append((str(phi), p, r.sigma, r.expected))
    return not bad, f"f1, f2 and {n} random polynomials" if not bad else f"{len(bad)} failures, first {bad[0]}"


# 8. Characteristic-p divisor of two lifts


def check_char_p():
    bad = []
    for p in (3, 5, 7):
        f1, _ = frobenius_maps(p)
        r1 = char_p_divisor(f1, [0], p)
        r2 = char_p_divisor(RationalMap((T - 1) ** p + 1), [0, 1], p)
        for r, want in ((r1, p - 1), (r2, 0)):
            if not (r.sigma("0") == want and certified(r) and r.total == 2 * p - 2):
                bad.append((p, r.to_json()))
    return not bad, "sigma(0) = p-1 versus 0, both certified" if not bad else f"mismatch {bad}"


# 9. Ledger assembly


def _random_balanced_graph(rng):
    deg = rng.randint(1, 6)
    chi_x = {f"X{t}": rng.randint(-3, 2) for t in range(rng.randint(1, 3))}
    verts = []
    for t in chi_x:
        left = deg
        while left:
            part = rng.randint(1, left)
            verts.append((f"v{len(verts)}", part, rng.randint(0, 4), t))
            left -= part
    ids = [v[0] for v in verts]
    edges = []
    for k in range(1, len(ids)):
        nu = rng.randint(-6, 6)
        edges.append(Edge(f"e{k}", EdgeEnd(ids[rng.randrange(k)], nu), EdgeEnd(ids[k], -nu)))
    ext = [ExternalEnd(rng.choice(ids), rng.choice([TY, T_IN]), rng.randint(-3, 8), f"end{k}") for k in range(rng.randint(0, 4))]
    shell = TriangGraph([Vertex(i, 0, d, r, t) for i, d, r, t in verts], edges, ext, chi_x)
    res = vertex_residuals(shell)
    final = [Vertex(i, -res[i], d, r, t) for i, d, r, t in verts]
    return TriangGraph(final, edges, ext, chi_x, sum(v.chi_piece for v in final), deg)


def _cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([*map(str, argv), "--json"], out, err)
    return code, out.getvalue()


def check_ledger(n=100):
    bad = []
    for p in PRIMES:
        rep = assemble_global_rh(f2_split_graph(p))
        if not (rep.balanced and rep.equation() == f"1 = {p}*1 - 0 - {p - 1}"):
            bad.append(("split", p))
    rng = random.Random(SEED + 9)
    for _ in range(n):
        if not assemble_global_rh(_random_balanced_graph(rng)).balanced:
            bad.append("random")
    for p in PRIMES:
        for M in frobenius_morphisms(p):
            direct = check_rh(M)
            G = TriangGraph.from_json(json.loads(json.dumps(graph_from_report(direct).to_json())))
            if json.dumps(assemble_global_rh(G).to_json(), indent=2) != json.dumps(direct.to_json(), indent=2):
                bad.append(("single", p))
    c1, a = _cli_json("rh", "check", "--morphism", FIXTURES / "f2_unit_disc.json")
    c2, b = _cli_json("ledger", "verify", "--graph", FIXTURES / "f2_single_vertex_graph.json")
    if (c1, c2) != (0, 0) or a != b:
        bad.append("cli bytes")
    return not bad, f"split graphs, {n} random graphs, single-vertex bytes equal" if not bad else f"failures {bad[:3]}"


# 10. Skeleton image along a dominated annulus


def check_skeleton(n_maps=12, n_radii=20):
    rng = random.Random(SEED + 10)
    bad = []
    for _ in range(n_maps):
        p = rng.choice(PRIMES)
        d = rng.randint(1, 5)
        c = _q(rng) * Fraction(p) ** rng.randint(-2, 2)
        # higher terms carry a large p-power so T^d dominates for s >= 0
        tail = {d + k: _q(rng) * Fraction(p) ** (k * rng.randint(3, 4)) for k in range(1, rng.randint(1, 3) + 1)}
        num = LaurentPoly({d: c, **tail})
        den = LaurentPoly({0: 1, 1: Fraction(p) ** 5 * _q(rng)})
        a = Fraction(rng.randint(-9, 9), rng.choice([1, 2, 4, 7, 11]))
        if padic_val(a, p) < 0:
            a = Fraction(rng.randint(-9, 9))
        phi = compose_maps(RationalMap(num, den), RationalMap(T - a))
        const = padic_val(c, p)
        for j in range(n_radii):
            s = Fraction(j, 4) + Fraction(1, 7)
            probe = skeleton_image_probe(phi, a, s, p)
            if (probe.d, probe.image_log_radius) != (d, d * s + const):
                bad.append((str(phi), p, a, s, probe))
    total = n_maps * n_radii
    return not bad, f"{total} probes on {n_maps} maps" if not bad else f"{len(bad)} failures, first {bad[0]}"


CRITERIA = [
    (1, "Frobenius-lift balance", check_frobenius),
    (2, "local sum identity", check_local_sum),
    (3, "germ composition and inversion", check_germ_laws),
    (4, "polygon oracle", check_polygon_oracle),
    (5, "classical RH on P^1", check_classical_rh),
    (6, "Euler characteristics", check_euler),
    (7, "sigma versus chi", check_sigma_chi),
    (8, "characteristic-p divisor", check_char_p),
    (9, "ledger assembly", check_ledger),
    (10, "skeleton image", check_skeleton),
]


def _line(num, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] AC{num} {name}: {detail}"


@pytest.mark.parametrize("num, name, check", CRITERIA, ids=[f"AC{n}" for n, _, _ in CRITERIA])
def test_acceptance(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail))
    sys.exit(1 if failed else 0)
