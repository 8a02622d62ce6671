"""JSON (de)serialization and DOT export with deterministic ordering.

All rationals are written in lowest terms as "n" or "p/q"; vertices,
edges, and divisor entries are sorted by id (then offset) so identical
inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .covers import DoubleCover
from .divisors import Divisor
from .errors import MalformedGraphError
from .graphs import MetricGraph, Point
from .rationals import rat, rat_str


def _expect(cond, msg):
    if not cond:
        raise MalformedGraphError(msg)


def _parse_rat(x, where):
    try:
        v = rat(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise MalformedGraphError("%s: bad rational %r" % (where, x))
    return v


# -- graphs ---------------------------------------------------------------


def graph_to_obj(graph: MetricGraph) -> dict:
    return {
        "vertices": [
            {"id": v, "genus": graph.genus_of(v)} for v in graph.vertex_ids
        ],
        "edges": [
            {
                "id": e,
                "tail": graph.ends(e)[0],
                "head": graph.ends(e)[1],
                "length": rat_str(graph.length(e)),
            }
            for e in graph.edge_ids
        ],
    }


def graph_from_obj(obj) -> MetricGraph:
    _expect(isinstance(obj, dict), "graph: expected an object")
    _expect("vertices" in obj, "graph: missing 'vertices'")
    _expect("edges" in obj, "graph: missing 'edges'")
    vertices = []
    for i, v in enumerate(obj["vertices"]):
        where = "vertices[%d]" % i
        _expect(isinstance(v, dict) and "id" in v, "%s: missing 'id'" % where)
        genus = v.get("genus", 0)
        _expect(
            isinstance(genus, int) and genus >= 0,
            "%s: genus must be a nonnegative integer" % where,
        )
        vertices.append((str(v["id"]), genus))
    edges = []
    for i, e in enumerate(obj["edges"]):
        where = "edges[%d]" % i
        for key in ("id", "tail", "head", "length"):
            _expect(isinstance(e, dict) and key in e, "%s: missing %r" % (where, key))
        edges.append(
            (
                str(e["id"]),
                str(e["tail"]),
                str(e["head"]),
                _parse_rat(e["length"], where),
            )
        )
    return MetricGraph(vertices, edges)


# -- divisors -------------------------------------------------------------


def _point_key(p: Point):
    return (p.id, p.offset if p.on_edge else Fraction(-1))


def divisor_to_obj(D: Divisor) -> list:
    out = []
    for p in sorted(D.support(), key=_point_key):
        at = (
            {"vertex": p.id}
            if p.is_vertex
            else {"edge": p.id, "offset": rat_str(p.offset)}
        )
        out.append({"at": at, "coeff": D.coeff(p)})
    return out


def divisor_from_obj(graph: MetricGraph, obj) -> Divisor:
    _expect(isinstance(obj, list), "divisor: expected a list")
    coeffs = []
    for i, rec in enumerate(obj):
        where = "divisor[%d]" % i
        _expect(
            isinstance(rec, dict) and "at" in rec and "coeff" in rec,
            "%s: needs 'at' and 'coeff'" % where,
        )
        _expect(isinstance(rec["coeff"], int), "%s: coeff must be an integer" % where)
        at = rec["at"]
        if "vertex" in at:
            p = Point.at_vertex(str(at["vertex"]))
        elif "edge" in at:
            _expect("offset" in at, "%s: edge point needs 'offset'" % where)
            p = Point.on_edge(str(at["edge"]), _parse_rat(at["offset"], where))
        else:
            raise MalformedGraphError("%s: 'at' needs 'vertex' or 'edge'" % where)
        try:
            p = graph.check_point(p)
        except Exception:
            raise MalformedGraphError("%s: point is not on the graph" % where)
        coeffs.append((p, rec["coeff"]))
    return Divisor(graph, coeffs)


# -- covers ---------------------------------------------------------------


def cover_to_obj(cover: DoubleCover) -> dict:
    return {
        "target": graph_to_obj(cover.target),
        "source": graph_to_obj(cover.source),
        "vertex_map": {v: cover.vertex_map[v] for v in sorted(cover.vertex_map)},
        "edge_map": [
            {"src": e, "tgt": cover.edge_map[e][0], "degree": cover.edge_map[e][1]}
            for e in sorted(cover.edge_map)
        ],
        "involution": {
            v: cover.involution_v[v] for v in sorted(cover.involution_v)
        },
    }


def cover_from_obj(obj) -> DoubleCover:
    _expect(isinstance(obj, dict), "cover: expected an object")
    for key in ("target", "source", "vertex_map", "edge_map", "involution"):
        _expect(key in obj, "cover: missing %r" % key)
    target = graph_from_obj(obj["target"])
    source = graph_from_obj(obj["source"])
    emap = {}
    for i, rec in enumerate(obj["edge_map"]):
        where = "edge_map[%d]" % i
        for key in ("src", "tgt", "degree"):
            _expect(isinstance(rec, dict) and key in rec, "%s: missing %r" % (where, key))
        _expect(rec["degree"] in (1, 2), "%s: degree must be 1 or 2" % where)
        emap[str(rec["src"])] = (str(rec["tgt"]), rec["degree"])
    vmap = {str(k): str(v) for k, v in obj["vertex_map"].items()}
    inv = {str(k): str(v) for k, v in obj["involution"].items()}
    try:
        return DoubleCover(target, source, vmap, emap, inv)
    except Exception as exc:
        raise MalformedGraphError("cover: %s" % exc)


# -- jacobian points ------------------------------------------------------


def jacobian_point_to_obj(coords, tree_edges) -> dict:
    return {
        "coords": [rat_str(c) for c in coords],
        "basis": "fundamental",
        "tree": sorted(tree_edges),
    }


# -- top-level helpers ----------------------------------------------------


def dumps(obj, pretty=False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    return json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedGraphError("invalid JSON: %s" % exc)


# -- DOT export -----------------------------------------------------------


def to_dot(graph: MetricGraph, divisor: Divisor = None) -> str:
    """Layout-free DOT with lengths as edge labels and optional divisor
    coefficients as vertex / edge-point annotations."""
    vlabel = {}
    epoints = {}
    if divisor is not None:
        for p, a in divisor.items():
            if p.is_vertex:
                vlabel[p.id] = a
            else:
                epoints.setdefault(p.id, []).append((p.offset, a))
    lines = ["graph {"]
    for v in graph.vertex_ids:
        attrs = []
        if graph.genus_of(v):
            attrs.append("genus=%d" % graph.genus_of(v))
        if v in vlabel:
            attrs.append('label="%s (%+d)"' % (v, vlabel[v]))
        lines.append(
            "  %s%s;" % (json.dumps(v), " [%s]" % ", ".join(attrs) if attrs else "")
        )
    for e in graph.edge_ids:
        t, h = graph.ends(e)
        attrs = ['label="%s"' % e, 'len="%s"' % rat_str(graph.length(e))]
        if e in epoints:
            marks = ", ".join(
                "%+d@%s" % (a, rat_str(off)) for off, a in sorted(epoints[e])
            )
            attrs.append('points="%s"' % marks)
        lines.append(
            "  %s -- %s [%s];" % (json.dumps(t), json.dumps(h), ", ".join(attrs))
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
