"""Built-in worked examples: the Frobenius lifts ``T^p`` and ``T^p - T``."""

from __future__ import annotations

from fractions import Fraction

from .berkdomain import CLOSED, OPEN, DiscSpec, FtDomainP1, closed_unit_disc, euler_char, sample_points
from .exactval import INFTY, check_prime
from .laurent import T, RationalMap
from .ledger import TY, Edge, EdgeEnd, ExternalEnd, TriangGraph, Vertex
from .ramification import TangentDirection, count_critical, degree_over, germ_data
from .rhcheck import MorphismSpec, char_p_divisor, check_rh
from .valpolygon import INSIDE, OUTSIDE


def frobenius_maps(p):
    check_prime(p)
    return RationalMap(T**p), RationalMap(T**p - T)


def frobenius_morphisms(p):
    f1, f2 = frobenius_maps(p)
    D = closed_unit_disc()
    return MorphismSpec(f1, D, D, {0: 0}, p), MorphismSpec(f2, D, D, {0: 0}, p)


def frobenius_summary(p):
    """Everything the ``examples frobenius`` command prints."""
    m1, m2 = frobenius_morphisms(p)
    t_inf = TangentDirection(INFTY, 0, INSIDE)
    out = {"p": p, "maps": []}
    for name, M in (("f1", m1), ("f2", m2)):
        rep = check_rh(M)
        g = germ_data(M.map, t_inf, INFTY, p)
        out["maps"].append({"name": name, "report": rep, "germ_inf": g})
    f1 = m1.map
    lift2 = RationalMap((T - 1) ** p + 1)
    out["charp"] = [
        ("T^p", char_p_divisor(f1, [0], p)),
        ("(T-1)^p+1", char_p_divisor(lift2, [0, 1], p)),
    ]
    return out


def f2_split_graph(p, s_split=Fraction(1, 8)):
    """``T^p - T`` on the closed unit disc cut at ``v(T - j) = s_split``.

    Vertices: the Gauss piece (closed unit disc minus the ``p`` closed
    discs ``D(j, s_split)``) and the ``p`` discs themselves.  All local data
    come from the ramification module; the discs with ``j != 0`` are
    translated to the origin first.
    """
    s = Fraction(s_split)
    if not 0 < s <= 1:
        raise ValueError("the split radius must satisfy 0 < s <= 1")
    _, f2 = frobenius_maps(p)
    gauss_dom = FtDomainP1([DiscSpec(INFTY, 0, OPEN)], [DiscSpec(j, s, CLOSED) for j in range(p)])
    target_a = FtDomainP1([DiscSpec(INFTY, 0, OPEN)], [DiscSpec(0, s, CLOSED)])
    target_b = FtDomainP1([DiscSpec(INFTY, -s, OPEN)])
    verts = [
        Vertex(
            "gauss",
            euler_char(gauss_dom),
            degree_over(f2, gauss_dom, sample_points(target_a, p), p, target_a),
            count_critical(f2, gauss_dom, p),
            "A",
        )
    ]
    ext = [ExternalEnd("gauss", TY, germ_data(f2, TangentDirection(INFTY, 0, INSIDE), INFTY, p).nu, "inf@0:inside")]
    edges = []
    for j in range(p):
        vid = f"disc{j}"
        g_out = germ_data(f2, TangentDirection(j, s, OUTSIDE), 0, p)
        local = f2.shift(j)
        disc_dom = FtDomainP1([DiscSpec(INFTY, -s, OPEN)])
        g_ty = germ_data(local, TangentDirection(INFTY, -s, INSIDE), INFTY, p)
        verts.append(
            Vertex(
                vid,
                euler_char(disc_dom),
                degree_over(local, disc_dom, sample_points(target_b, p), p, target_b),
                count_critical(local, disc_dom, p),
                "B",
            )
        )
        # the Gauss side sees a T_in end; stored with the outward sign
        edges.append(Edge(f"e{j}", EdgeEnd("gauss", -g_out.nu), EdgeEnd(vid, g_ty.nu)))
    return TriangGraph(
        verts,
        edges,
        ext,
        {"A": euler_char(target_a), "B": euler_char(target_b)},
        euler_char(closed_unit_disc()),
        p,
    )


__all__ = ["frobenius_maps", "frobenius_morphisms", "frobenius_summary", "f2_split_graph"]
