"""Bookkeeping for triangulated curves.

Each vertex is a piece ``C_v`` of the source with its Euler characteristic,
the local degree of the morphism on it, the local ramification count, and
the target piece it maps onto.  Internal edges are annuli shared by two
pieces; their two ends carry nu values in the outward convention (the
sign a TY end would carry), so a genuine annulus has ``nu_a + nu_b = 0``.
External ends are the surviving TY and T_in directions of the whole curve.

Local RH at a vertex reads ``r_v = 0`` with

    r_v = chi_piece - deg_local * chi_X(image) + ram_local
          + sum(internal end nu) + sum(TY nu) - sum(T_in nu).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .exactval import InputError
from .rhcheck import RHReport

TY = "TY"
T_IN = "T_in"


class LedgerError(ValueError):
    """Graph data is inconsistent or assembly was refused."""


@dataclass(frozen=True)
class Vertex:
    id: str
    chi_piece: int
    deg_local: int
    ram_local: int = 0
    image: str = None

    @property
    def target(self):
        return self.image if self.image is not None else self.id


@dataclass(frozen=True)
class EdgeEnd:
    vertex: str
    nu: int


@dataclass(frozen=True)
class Edge:
    id: str
    end_a: EdgeEnd
    end_b: EdgeEnd


@dataclass(frozen=True)
class ExternalEnd:
    vertex: str
    kind: str
    nu: int
    direction: str = ""


@dataclass
class TriangGraph:
    vertices: list
    internal_edges: list = field(default_factory=list)
    external_ends: list = field(default_factory=list)
    chi_X_pieces: dict = field(default_factory=dict)
    chi_total: int = None
    deg: int = None

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("graph: expected an object")

        def _int(v, where, lo=None):
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputError(f"{where}: expected an integer")
            if lo is not None and v < lo:
                raise InputError(f"{where}: must be >= {lo}")
            return v

        verts = []
        for n, v in enumerate(obj.get("vertices", [])):
            w = f"graph.vertices[{n}]"
            if not isinstance(v, dict) or "id" not in v:
                raise InputError(f"{w}: expected an object with an id")
            verts.append(
                Vertex(
                    str(v["id"]),
                    _int(v.get("chi_piece"), f"{w}.chi_piece"),
                    _int(v.get("deg_local"), f"{w}.deg_local", 1),
                    _int(v.get("ram_local", 0), f"{w}.ram_local", 0),
                    None if v.get("image") is None else str(v["image"]),
                )
            )
        edges = []
        for n, e in enumerate(obj.get("internal_edges", [])):
            w = f"graph.internal_edges[{n}]"
            ends = []
            for key in ("end_a", "end_b"):
                x = e.get(key) if isinstance(e, dict) else None
                if not isinstance(x, dict) or "vertex" not in x:
                    raise InputError(f"{w}.{key}: expected {{vertex, nu}}")
                ends.append(EdgeEnd(str(x["vertex"]), _int(x.get("nu"), f"{w}.{key}.nu")))
            edges.append(Edge(str(e.get("id", n)), *ends))
        ext = []
        for n, x in enumerate(obj.get("external_ends", [])):
            w = f"graph.external_ends[{n}]"
            if not isinstance(x, dict) or "vertex" not in x:
                raise InputError(f"{w}: expected {{vertex, kind, nu}}")
            if x.get("kind") not in (TY, T_IN):
                raise InputError(f"{w}.kind: expected 'TY' or 'T_in'")
            ext.append(
                ExternalEnd(str(x["vertex"]), x["kind"], _int(x.get("nu"), f"{w}.nu"), str(x.get("direction", f"end{n}")))
            )
        chi_x = obj.get("chi_X_pieces", {})
        if not isinstance(chi_x, dict):
            raise InputError("graph.chi_X_pieces: expected an object")
        chi_x = {str(k): _int(v, f"graph.chi_X_pieces[{k}]") for k, v in chi_x.items()}
        chi_total = obj.get("chi_total")
        if chi_total is not None:
            _int(chi_total, "graph.chi_total")
        deg = obj.get("deg")
        if deg is not None:
            _int(deg, "graph.deg", 1)
        return cls(verts, edges, ext, chi_x, chi_total, deg)

    def to_json(self):
        out = {
            "vertices": [
                {
                    "id": v.id,
                    "chi_piece": v.chi_piece,
                    "deg_local": v.deg_local,
                    "ram_local": v.ram_local,
                    **({"image": v.image} if v.image is not None else {}),
                }
                for v in self.vertices
            ],
            "internal_edges": [
                {
                    "id": e.id,
                    "end_a": {"vertex": e.end_a.vertex, "nu": e.end_a.nu},
                    "end_b": {"vertex": e.end_b.vertex, "nu": e.end_b.nu},
                }
                for e in self.internal_edges
            ],
            "external_ends": [
                {"vertex": x.vertex, "kind": x.kind, "nu": x.nu, "direction": x.direction}
                for x in self.external_ends
            ],
            "chi_X_pieces": dict(self.chi_X_pieces),
        }
        if self.chi_total is not None:
            out["chi_total"] = self.chi_total
        if self.deg is not None:
            out["deg"] = self.deg
        return out


def validate_graph(G, chi_X_pieces=None, deg=None):
    """Structural checks: references, connectivity, degree partitions."""
    ids = [v.id for v in G.vertices]
    if not ids:
        raise LedgerError("graph has no vertices")
    if len(set(ids)) != len(ids):
        raise LedgerError("duplicate vertex ids")
    known = set(ids)
    parent = {i: i for i in ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in G.internal_edges:
        for end in (e.end_a, e.end_b):
            if end.vertex not in known:
                raise LedgerError(f"edge {e.id} references unknown vertex {end.vertex!r}")
        parent[find(e.end_a.vertex)] = find(e.end_b.vertex)
    for x in G.external_ends:
        if x.vertex not in known:
            raise LedgerError(f"external end references unknown vertex {x.vertex!r}")
    if len({find(i) for i in ids}) != 1:
        raise LedgerError("graph is not connected")
    chi_X_pieces = G.chi_X_pieces if chi_X_pieces is None else chi_X_pieces
    for v in G.vertices:
        if v.target not in chi_X_pieces:
            raise LedgerError(f"no chi_X value for target piece {v.target!r} of vertex {v.id!r}")
    deg = G.deg if deg is None else deg
    if deg is not None:
        per_target = defaultdict(int)
        for v in G.vertices:
            per_target[v.target] += v.deg_local
        for t, s in sorted(per_target.items()):
            if s != deg:
                raise LedgerError(f"local degrees over target piece {t!r} sum to {s}, not deg = {deg}")
    return G


def check_additivity(G, chi_total):
    return sum(v.chi_piece for v in G.vertices) == chi_total


def check_edge_cancellation(G):
    return all(e.end_a.nu + e.end_b.nu == 0 for e in G.internal_edges)


def vertex_residuals(G, chi_X_pieces=None):
    """Local RH residual ``r_v`` of every vertex."""
    chi_X_pieces = G.chi_X_pieces if chi_X_pieces is None else chi_X_pieces
    r = {v.id: v.chi_piece - v.deg_local * chi_X_pieces[v.target] + v.ram_local for v in G.vertices}
    for e in G.internal_edges:
        r[e.end_a.vertex] += e.end_a.nu
        r[e.end_b.vertex] += e.end_b.nu
    for x in G.external_ends:
        r[x.vertex] += x.nu if x.kind == TY else -x.nu
    return r


def assemble_global_rh(G, chi_X_pieces=None, deg=None):
    """Global RH report from local vertex data.

    Refuses (``LedgerError``) unless pieces are additive and every internal
    edge cancels.  The sum of the vertex residuals then equals
    ``lhs - rhs`` of the returned report.
    """
    chi_X_pieces = G.chi_X_pieces if chi_X_pieces is None else chi_X_pieces
    deg = G.deg if deg is None else deg
    if deg is None:
        raise LedgerError("global degree is missing")
    validate_graph(G, chi_X_pieces, deg)
    chi_Y = sum(v.chi_piece for v in G.vertices)
    if G.chi_total is not None and not check_additivity(G, G.chi_total):
        raise LedgerError(f"pieces sum to chi = {chi_Y}, declared total {G.chi_total}")
    bad = [e.id for e in G.internal_edges if e.end_a.nu + e.end_b.nu != 0]
    if bad:
        raise LedgerError(f"internal edges do not cancel: {', '.join(bad)}")
    targets = sorted({v.target for v in G.vertices})
    chi_X = sum(chi_X_pieces[t] for t in targets)
    ram = sum(v.ram_local for v in G.vertices)
    nu_out = [(x.direction, x.nu) for x in G.external_ends if x.kind == TY]
    nu_in = [(x.direction, x.nu) for x in G.external_ends if x.kind == T_IN]
    report = RHReport.build(chi_Y, chi_X, deg, ram, nu_out, nu_in)
    if sum(vertex_residuals(G, chi_X_pieces).values()) != report.lhs - report.rhs:
        raise LedgerError("residual sum does not match the global balance")
    return report


def infer_missing_residual(G, missing, chi_X_pieces=None, deg=None):
    """Residual forced on vertex ``missing`` by the others and the global sum.

    If the global formula holds and every other vertex balances, this is 0.
    """
    report = assemble_global_rh(G, chi_X_pieces, deg)
    r = vertex_residuals(G, chi_X_pieces)
    if missing not in r:
        raise LedgerError(f"unknown vertex {missing!r}")
    return (report.lhs - report.rhs) - sum(v for k, v in r.items() if k != missing)


def graph_from_report(report, source="Y", target="X"):
    """Single-vertex graph carrying a direct RH computation."""
    ends = [ExternalEnd(source, TY, n, d) for d, n in report.nu_out]
    ends += [ExternalEnd(source, T_IN, n, d) for d, n in report.nu_in]
    return TriangGraph(
        [Vertex(source, report.chi_Y, report.deg, report.ram_sum, target)],
        [],
        ends,
        {target: report.chi_X},
        report.chi_Y,
        report.deg,
    )
