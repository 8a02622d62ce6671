"""Command-line interface.

Emits compact JSON by default and aligned text with --pretty.  Exit
codes: 0 success, 2 malformed input, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import sys

from . import serialize
from .covers import covers_with_dilation, free_cover, free_covers, pullback, pushforward, verify_cover
from .divisors import equivalent, is_principal, reduce_at
from .errors import MalformedGraphError, TropcoverError
from .graphs import CycleSpace, MetricGraph, Point, validate
from .jacobian import abel_jacobi, period_lattice
from .prym import kernel_component_count, pairing_table, prym_contains
from .rationals import rat
from .theta import enumerate_theta


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedGraphError("%s: %s" % (path, exc))
    return serialize.loads(text)


def _read_graph(path) -> MetricGraph:
    return serialize.graph_from_obj(_read_json(path))


def _read_cover(path):
    return serialize.cover_from_obj(_read_json(path))


def _parse_point(spec: str) -> Point:
    """"v" for a vertex, "e@p/q" for an edge point."""
    if "@" in spec:
        eid, off = spec.rsplit("@", 1)
        return Point.on_edge(eid, rat(off))
    return Point.at_vertex(spec)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cycle_list(cycle) -> list:
    return sorted(cycle)


# -- command handlers (each returns the output string) --------------------


def cmd_validate(args):
    obj = _read_json(args.graph)
    graph = serialize.graph_from_obj(obj)
    problems = validate(graph)
    if problems:
        raise MalformedGraphError("; ".join(problems))
    if args.pretty:
        return "valid graph: %d vertices, %d edges, genus %d\n" % (
            len(graph.vertex_ids),
            len(graph.edge_ids),
            graph.genus(),
        )
    return serialize.dumps(
        {
            "ok": True,
            "vertices": len(graph.vertex_ids),
            "edges": len(graph.edge_ids),
            "genus": graph.genus(),
            "connected": graph.is_connected(),
        }
    )


def cmd_theta(args):
    graph = _read_graph(args.graph)
    chars = enumerate_theta(graph)
    records = [
        {
            "cycle": _cycle_list(t.cycle),
            "divisor": serialize.divisor_to_obj(t.divisor),
            "effective": t.effective,
        }
        for t in chars
    ]
    if args.pretty:
        lines = []
        for rec in records:
            terms = " + ".join(
                "%d at %s"
                % (
                    e["coeff"],
                    e["at"].get("vertex")
                    or "%s@%s" % (e["at"]["edge"], e["at"]["offset"]),
                )
                for e in rec["divisor"]
            )
            lines.append(
                "cycle {%s}: %s  [%s]"
                % (
                    ",".join(rec["cycle"]),
                    terms or "0",
                    "effective" if rec["effective"] else "non-effective",
                )
            )
        return "\n".join(lines) + "\n"
    return "".join(serialize.dumps(rec) for rec in records)


def cmd_divisor(args):
    graph = _read_graph(args.graph)
    if args.action == "equiv":
        d1 = serialize.divisor_from_obj(graph, _read_json(args.divisors[0]))
        d2 = serialize.divisor_from_obj(graph, _read_json(args.divisors[1]))
        return "true\n" if equivalent(d1, d2) else "false\n"
    if args.action == "principal":
        d = serialize.divisor_from_obj(graph, _read_json(args.divisors[0]))
        return "true\n" if is_principal(d) else "false\n"
    # reduce
    d = serialize.divisor_from_obj(graph, _read_json(args.divisors[0]))
    q = graph.check_point(_parse_point(args.at))
    red = reduce_at(d, q)
    return serialize.dumps(serialize.divisor_to_obj(red))


def cmd_jac(args):
    graph = _read_graph(args.graph)
    lat = period_lattice(graph)
    d = serialize.divisor_from_obj(graph, _read_json(args.divisor))
    coords, _cert = abel_jacobi(lat, d)
    tree = [e for e in graph.edge_ids if e not in lat.cycles.nontree]
    return serialize.dumps(serialize.jacobian_point_to_obj(coords, tree))


def cmd_cover(args):
    if args.action == "free":
        graph = _read_graph(args.graph)
        if args.bits is not None:
            cs = CycleSpace(graph)
            if len(args.bits) != len(cs.nontree) or set(args.bits) - {"0", "1"}:
                raise MalformedGraphError(
                    "--bits needs %d binary digits (non-tree edges %s)"
                    % (len(cs.nontree), ",".join(cs.nontree))
                )
            bits = {e: int(b) for e, b in zip(cs.nontree, args.bits)}
            covers = [free_cover(graph, bits)]
        else:
            covers = free_covers(graph)
        return "".join(serialize.dumps(serialize.cover_to_obj(c)) for c in covers)
    if args.action == "dilated":
        graph = _read_graph(args.graph)
        cycle = frozenset(args.cycle.split(",")) if args.cycle else frozenset()
        covers = covers_with_dilation(graph, cycle)
        return "".join(serialize.dumps(serialize.cover_to_obj(c)) for c in covers)
    if args.action == "verify":
        cover = _read_cover(args.graph)
        report = verify_cover(cover)
        return serialize.dumps(
            {
                "ok": report.ok,
                "dilation": _cycle_list(report.dilation),
                "problems": report.problems,
            }
        )
    # pullback / pushforward
    cover = _read_cover(args.graph)
    if args.action == "pullback":
        d = serialize.divisor_from_obj(cover.target, _read_json(args.divisor))
        out = pullback(cover, d)
    else:
        sharp, _ = cover.source_sharp()
        d = serialize.divisor_from_obj(sharp, _read_json(args.divisor))
        out = pushforward(cover, d)
    return serialize.dumps(serialize.divisor_to_obj(out))


def cmd_prym(args):
    cover = _read_cover(args.cover)
    if args.action == "contains":
        sharp, _ = cover.source_sharp()
        d = serialize.divisor_from_obj(sharp, _read_json(args.divisor))
        return "true\n" if prym_contains(cover, d) else "false\n"
    return "%d\n" % kernel_component_count(cover)


def cmd_pair(args):
    graph = _read_graph(args.graph)
    evens, table = pairing_table(graph)
    cycles = [_cycle_list(c) for c in evens]
    if args.pretty:
        labels = ["{%s}" % ",".join(c) for c in cycles]
        width = max(len(s) for s in labels)
        lines = [" " * width + "  " + " ".join(str(i) for i in range(len(table)))]
        for lab, row in zip(labels, zip(*table)):
            lines.append("%-*s  %s" % (width, lab, " ".join(str(b) for b in row)))
        return "\n".join(lines) + "\n"
    return serialize.dumps({"cycles": cycles, "table": table})


def cmd_export(args):
    graph = _read_graph(args.graph)
    divisor = None
    if args.divisor:
        divisor = serialize.divisor_from_obj(graph, _read_json(args.divisor))
    return serialize.to_dot(graph, divisor)


# -- argument parsing -----------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropcover",
        description="Exact divisor theory on metric graphs: theta "
        "characteristics, double covers, Prym varieties, and the mod-2 pairing.",
    )
    parser.add_argument("--pretty", action="store_true", help="aligned text output")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    parser.add_argument("--out", help="write output to a file instead of stdout")
    # the same flags are accepted after the verb; SUPPRESS keeps a
    # flag given before the verb from being clobbered by the default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("validate", help="check a graph file")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_validate)

    p = add_parser("theta", help="enumerate theta characteristics")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_theta)

    p = add_parser("divisor", help="divisor decisions")
    p.add_argument("action", choices=["equiv", "principal", "reduce"])
    p.add_argument("graph")
    p.add_argument("divisors", nargs="+")
    p.add_argument("--at", help="reduction point: vertex id or edge@offset")
    p.set_defaults(handler=cmd_divisor)

    p = add_parser("jac", help="Abel-Jacobi coordinates of a divisor")
    p.add_argument("graph")
    p.add_argument("divisor")
    p.set_defaults(handler=cmd_jac)

    p = add_parser("cover", help="build or verify double covers")
    p.add_argument("action", choices=["free", "dilated", "verify", "pullback", "pushforward"])
    p.add_argument("graph", help="graph file (free/dilated) or cover file")
    p.add_argument("divisor", nargs="?", help="divisor file (pullback/pushforward)")
    p.add_argument("--bits", help="sheet-swap bits over the non-tree edges")
    p.add_argument("--cycle", help="comma-separated dilation edge ids")
    p.set_defaults(handler=cmd_cover)

    p = add_parser("prym", help="Prym membership and component count")
    p.add_argument("action", choices=["contains", "components"])
    p.add_argument("cover")
    p.add_argument("divisor", nargs="?")
    p.set_defaults(handler=cmd_prym)

    p = add_parser("pair", help="mod-2 pairing table of free covers vs cycles")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_pair)

    p = add_parser("export", help="emit a DOT rendering")
    p.add_argument("format", choices=["dot"])
    p.add_argument("graph")
    p.add_argument("divisor", nargs="?")
    p.set_defaults(handler=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "divisor":
        if args.action == "equiv" and len(args.divisors) != 2:
            parser.error("divisor equiv needs two divisor files")
        if args.action in ("principal", "reduce") and len(args.divisors) != 1:
            parser.error("divisor %s needs one divisor file" % args.action)
        if args.action == "reduce" and not args.at:
            parser.error("divisor reduce needs --at")
    if args.verb == "cover":
        if args.action in ("pullback", "pushforward") and not args.divisor:
            parser.error("cover %s needs a divisor file" % args.action)
        if args.action == "dilated" and not args.cycle:
            parser.error("cover dilated needs --cycle")
    if args.verb == "prym" and args.action == "contains" and not args.divisor:
        parser.error("prym contains needs a divisor file")
    try:
        _emit(args, args.handler(args))
    except MalformedGraphError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except TropcoverError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
