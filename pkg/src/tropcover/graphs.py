"""Metric graphs with exact rational edge lengths.

A graph is a finite model: vertices carrying a nonnegative genus, edges
carrying a positive rational length.  Loops and parallel edges are allowed.
Everything downstream (divisors, Jacobians, covers) works with points of the
underlying metric space, which are either vertices or interior edge positions
at a rational offset from the tail.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import CycleError, MalformedGraphError, PointError
from .rationals import rat

ZERO = Fraction(0)


@dataclass(frozen=True, order=True)
class Point:
    """A point of the metric space: a vertex, or an edge interior position."""

    kind: str  # "vertex" | "edge"
    id: str
    offset: Fraction = ZERO

    @staticmethod
    def at_vertex(vid: str) -> "Point":
        return Point("vertex", vid)

    @staticmethod
    def on_edge(eid: str, offset) -> "Point":
        return Point("edge", eid, rat(offset))

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    def __repr__(self):
        if self.is_vertex:
            return "Point(%s)" % self.id
        return "Point(%s@%s)" % (self.id, self.offset)


class MetricGraph:
    """Immutable (augmented) metric graph."""

    def __init__(self, vertices, edges):
        """vertices: iterable of id or (id, genus); edges: (id, tail, head, length)."""
        genus = {}
        for v in vertices:
            if isinstance(v, str):
                vid, g = v, 0
            else:
                vid, g = v
            if vid in genus:
                raise MalformedGraphError("duplicate vertex id %r" % vid)
            if g < 0:
                raise MalformedGraphError("negative genus at %r" % vid)
            genus[vid] = int(g)
        edict = {}
        for eid, tail, head, length in edges:
            if eid in edict:
                raise MalformedGraphError("duplicate edge id %r" % eid)
            if tail not in genus or head not in genus:
                raise MalformedGraphError("edge %r has unknown endpoint" % eid)
            ell = rat(length)
            if ell <= 0:
                raise MalformedGraphError("edge %r has nonpositive length" % eid)
            edict[eid] = (tail, head, ell)
        self._genus = genus
        self._edges = edict
        self.vertex_ids = tuple(sorted(genus))
        self.edge_ids = tuple(sorted(edict))
        adj = {v: [] for v in genus}
        for eid in self.edge_ids:
            tail, head, _ = edict[eid]
            adj[tail].append((eid, 0))
            adj[head].append((eid, 1))
        # edge-ends at each vertex; a loop contributes both of its ends
        self._adj = {v: tuple(sorted(ends)) for v, ends in adj.items()}

    # -- basic accessors -------------------------------------------------

    def genus_of(self, vid: str) -> int:
        return self._genus[vid]

    def ends(self, eid: str):
        """(tail, head) of an edge."""
        t, h, _ = self._edges[eid]
        return t, h

    def length(self, eid: str) -> Fraction:
        return self._edges[eid][2]

    def ends_at(self, vid: str):
        """Sorted (edge id, end) pairs incident to a vertex; end 0=tail, 1=head."""
        return self._adj[vid]

    def valence(self, vid: str) -> int:
        return len(self._adj[vid])

    def other_end(self, eid: str, vid_end: int) -> str:
        t, h, _ = self._edges[eid]
        return h if vid_end == 0 else t

    def end_vertex(self, eid: str, end: int) -> str:
        t, h, _ = self._edges[eid]
        return t if end == 0 else h

    def is_augmented(self) -> bool:
        return any(g > 0 for g in self._genus.values())

    def total_length(self) -> Fraction:
        return sum((self.length(e) for e in self.edge_ids), ZERO)

    # -- connectivity and genus ------------------------------------------

    def components(self):
        """Vertex sets of connected components, each sorted, listed by min id."""
        seen = set()
        comps = []
        for root in self.vertex_ids:
            if root in seen:
                continue
            stack = [root]
            comp = []
            seen.add(root)
            while stack:
                v = stack.pop()
                comp.append(v)
                for eid, end in self._adj[v]:
                    w = self.other_end(eid, end)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertex_ids) <= 1 or len(self.components()) == 1

    def component_of(self, vid: str):
        for comp in self.components():
            if vid in comp:
                return comp
        raise PointError("unknown vertex %r" % vid)

    def genus(self) -> int:
        """First Betti number plus the total vertex genus."""
        b1 = len(self.edge_ids) - len(self.vertex_ids) + len(self.components())
        return b1 + sum(self._genus.values())

    # -- points ----------------------------------------------------------

    def point(self, eid: str, offset) -> Point:
        """Point on an edge, normalized to vertex form at the endpoints."""
        if eid not in self._edges:
            raise PointError("unknown edge %r" % eid)
        t = rat(offset)
        tail, head, ell = self._edges[eid]
        if t == 0:
            return Point.at_vertex(tail)
        if t == ell:
            return Point.at_vertex(head)
        if not 0 < t < ell:
            raise PointError("offset %s outside edge %r of length %s" % (t, eid, ell))
        return Point.on_edge(eid, t)

    def vertex_point(self, vid: str) -> Point:
        if vid not in self._genus:
            raise PointError("unknown vertex %r" % vid)
        return Point.at_vertex(vid)

    def check_point(self, p: Point) -> Point:
        if p.is_vertex:
            return self.vertex_point(p.id)
        return self.point(p.id, p.offset)

    # -- equality (used by divisors to assert a common host) -------------

    def same_model(self, other: "MetricGraph") -> bool:
        return self is other or (
            self._genus == other._genus and self._edges == other._edges
        )


def validate(vertices, edges=None):
    """Diagnostics for raw graph data; empty list iff the data is a valid graph.

    Accepts either raw (vertices, edges) lists as in the JSON schema, or a
    MetricGraph instance (which can only still fail connectivity).
    """
    problems = []
    if isinstance(vertices, MetricGraph):
        graph = vertices
        if not graph.is_connected():
            problems.append("disconnected")
        return problems
    seen_v = set()
    norm = []
    for v in vertices:
        vid, g = (v, 0) if isinstance(v, str) else v
        if vid in seen_v:
            problems.append("duplicate vertex id %r" % vid)
        seen_v.add(vid)
        if g < 0:
            problems.append("negative genus at %r" % vid)
            g = 0
        norm.append((vid, g))
    seen_e = set()
    ok_edges = []
    for eid, tail, head, length in edges:
        bad = False
        if eid in seen_e:
            problems.append("duplicate edge id %r" % eid)
            bad = True
        seen_e.add(eid)
        for end in (tail, head):
            if end not in seen_v:
                problems.append("edge %r has unknown endpoint %r" % (eid, end))
                bad = True
        try:
            ell = rat(length)
        except (TypeError, ValueError):
            problems.append("edge %r has unparseable length" % eid)
            continue
        if ell <= 0:
            problems.append("edge %r has nonpositive length %s" % (eid, ell))
            bad = True
        if not bad:
            ok_edges.append((eid, tail, head, ell))
    if not problems:
        if not MetricGraph(norm, ok_edges).is_connected():
            problems.append("disconnected")
    return problems


# -- cycle space ---------------------------------------------------------


class CycleSpace:
    """Spanning forest, fundamental cycle basis, and the 2^g even subgraphs.

    Basis cycles are integer edge vectors (dicts), oriented so the defining
    non-tree edge is traversed tail to head.
    """

    def __init__(self, graph: MetricGraph):
        self.graph = graph
        parent = {}  # vid -> (edge id, end used to arrive) or None for roots
        order = []
        seen = set()
        forest = set()
        for root in graph.vertex_ids:
            if root in seen:
                continue
            parent[root] = None
            seen.add(root)
            queue = [root]
            while queue:
                v = queue.pop(0)
                order.append(v)
                for eid, end in graph.ends_at(v):
                    w = graph.other_end(eid, end)
                    if w not in seen:
                        seen.add(w)
                        parent[w] = (eid, end)
                        forest.add(eid)
                        queue.append(w)
        self.parent = parent
        self.forest = frozenset(forest)
        self.order = tuple(order)
        self.nontree = tuple(e for e in graph.edge_ids if e not in forest)
        self.basis = [self._fundamental_cycle(e) for e in self.nontree]

    def _root_chain(self, vid: str):
        """Edge chain from the component root down to vid, as {eid: +-1}."""
        chain = {}
        v = vid
        while self.parent[v] is not None:
            eid, end = self.parent[v]
            # arrived at v along the edge; +1 if traversed tail->head
            chain[eid] = chain.get(eid, 0) + (1 if end == 0 else -1)
            v = self.graph.end_vertex(eid, end)
        return chain

    def _fundamental_cycle(self, eid: str):
        tail, head = self.graph.ends(eid)
        cyc = {eid: 1}
        for e, c in self._root_chain(tail).items():
            cyc[e] = cyc.get(e, 0) + c
        for e, c in self._root_chain(head).items():
            cyc[e] = cyc.get(e, 0) - c
        return {e: c for e, c in cyc.items() if c}

    def tree_chain(self, src: str, dst: str):
        """Forest chain from src to dst (same component), as {eid: +-1}."""
        up_src = self._root_chain(src)
        up_dst = self._root_chain(dst)
        chain = dict(up_dst)
        for e, c in up_src.items():
            chain[e] = chain.get(e, 0) - c
        return {e: c for e, c in chain.items() if c}

    def even_subgraphs(self):
        """All 2^g even subgraphs, as frozensets of edge ids, in span order."""
        out = []
        g = len(self.nontree)
        supports = [frozenset(c) for c in self.basis]
        for mask in range(1 << g):
            acc = frozenset()
            for i in range(g):
                if mask >> i & 1:
                    acc = acc ^ supports[i]
            out.append(acc)
        return out

    def expand(self, chain):
        """Coefficients of a cycle (edge vector) on the fundamental basis."""
        return [chain.get(e, 0) for e in self.nontree]


def is_even_subgraph(graph: MetricGraph, edge_set) -> bool:
    for eid in edge_set:
        if eid not in graph._edges:
            raise PointError("unknown edge %r" % eid)
    for v in graph.vertex_ids:
        if sum(1 for eid, _ in graph.ends_at(v) if eid in edge_set) % 2:
            return False
    return True


def check_even_subgraph(graph: MetricGraph, edge_set) -> frozenset:
    es = frozenset(edge_set)
    if not is_even_subgraph(graph, es):
        raise CycleError("edge set %s is not an even subgraph" % sorted(es))
    return es


# -- refinement ----------------------------------------------------------


class Refinement:
    """A model refinement: new vertices at prescribed edge-interior points.

    Each refined edge covers an interval [a, b] of a base edge, oriented the
    same way.  Vertices of the base survive with their ids and genus.
    """

    def __init__(self, base: MetricGraph, points: Iterable[Point]):
        by_edge = {}
        for p in points:
            p = base.check_point(p)
            if not p.is_vertex:
                by_edge.setdefault(p.id, set()).add(p.offset)
        vertices = [(v, base.genus_of(v)) for v in base.vertex_ids]
        edges = []
        seg = {}  # refined eid -> (base eid, a, b)
        pieces = {}  # base eid -> list of refined eids in offset order
        for eid in base.edge_ids:
            tail, head = base.ends(eid)
            ell = base.length(eid)
            cuts = sorted(by_edge.get(eid, ()))
            if not cuts:
                edges.append((eid, tail, head, ell))
                seg[eid] = (eid, ZERO, ell)
                pieces[eid] = [eid]
                continue
            stops = [ZERO] + cuts + [ell]
            names = [tail] + ["%s@%s" % (eid, t) for t in cuts] + [head]
            for mid in names[1:-1]:
                vertices.append((mid, 0))
            ids = []
            for k in range(len(stops) - 1):
                reid = "%s#%d" % (eid, k)
                edges.append((reid, names[k], names[k + 1], stops[k + 1] - stops[k]))
                seg[reid] = (eid, stops[k], stops[k + 1])
                ids.append(reid)
            pieces[eid] = ids
        self.base = base
        self.graph = MetricGraph(vertices, edges)
        self.seg = seg
        self.pieces = pieces

    def to_base_point(self, p: Point) -> Point:
        """Map a point of the refined model back to the base model."""
        if p.is_vertex:
            if p.id in self.base._genus:
                return p
            eid, off = p.id.rsplit("@", 1)
            return self.base.point(eid, Fraction(off))
        beid, a, _ = self.seg[p.id]
        return self.base.point(beid, a + p.offset)

    def to_refined_point(self, p: Point) -> Point:
        """Map a base point into the refined model."""
        p = self.base.check_point(p)
        if p.is_vertex:
            return p
        for reid in self.pieces[p.id]:
            _, a, b = self.seg[reid]
            if a <= p.offset <= b:
                return self.graph.point(reid, p.offset - a)
        raise PointError("point %r not covered by refinement" % (p,))

    def interval(self, reid: str):
        """(base edge id, a, b) covered by a refined edge."""
        return self.seg[reid]


def refine(graph: MetricGraph, points: Iterable[Point]) -> Refinement:
    return Refinement(graph, points)


# -- distance fields -----------------------------------------------------


class DistanceField:
    """Exact shortest-path distance to a point or to an even subgraph.

    Values are stored at the vertices of a refinement that includes the
    source and every interior ridge point, so each refined segment has slope
    +-1 (or 0 exactly on the source).
    """

    def __init__(self, graph: MetricGraph, source: Union[Point, frozenset]):
        if isinstance(source, Point):
            self.source_cycle = None
            src_pt = graph.check_point(source)
            self.source = src_pt
            seed_points = [src_pt]
        else:
            cyc = check_even_subgraph(graph, source)
            if not cyc:
                raise PointError("empty source cycle")
            self.source_cycle = cyc
            self.source = cyc
            seed_points = []
        self.graph = graph

        first = refine(graph, seed_points)
        dist = self._dijkstra(first)
        ridges = self._find_ridges(first, dist)
        self.ridge_base_points = tuple(sorted(ridges))

        self.refinement = refine(graph, list(seed_points) + list(ridges))
        values = {}
        for v in self.refinement.graph.vertex_ids:
            bp = self.refinement.to_base_point(Point.at_vertex(v))
            values[v] = _eval_on(first, dist, bp)
        self.values = values
        self._check_slopes()

    def _seed_vertices(self, ref: Refinement):
        if self.source_cycle is None:
            rp = ref.to_refined_point(self.source)
            assert rp.is_vertex
            return {rp.id}
        seeds = set()
        for eid in self.source_cycle:
            for reid in ref.pieces[eid]:
                t, h = ref.graph.ends(reid)
                seeds.add(t)
                seeds.add(h)
        return seeds

    def _zero_edges(self, ref: Refinement):
        if self.source_cycle is None:
            return frozenset()
        out = set()
        for eid in self.source_cycle:
            out.update(ref.pieces[eid])
        return frozenset(out)

    def _dijkstra(self, ref: Refinement):
        g = ref.graph
        dist = {}
        heap = []
        for v in self._seed_vertices(ref):
            heapq.heappush(heap, (ZERO, v))
        while heap:
            d, v = heapq.heappop(heap)
            if v in dist:
                continue
            dist[v] = d
            for eid, end in g.ends_at(v):
                w = g.other_end(eid, end)
                if w not in dist:
                    heapq.heappush(heap, (d + g.length(eid), w))
        return dist

    def _find_ridges(self, ref: Refinement, dist):
        zero = self._zero_edges(ref)
        ridges = []
        for reid in ref.graph.edge_ids:
            if reid in zero:
                continue
            t, h = ref.graph.ends(reid)
            ell = ref.graph.length(reid)
            # meeting point of the two descent directions, when interior
            tt = (ell + dist[h] - dist[t]) / 2
            if 0 < tt < ell:
                beid, a, _ = ref.interval(reid)
                ridges.append(ref.base.point(beid, a + tt))
        return ridges

    def _check_slopes(self):
        g = self.refinement.graph
        zero = self._zero_edges(self.refinement)
        for reid in g.edge_ids:
            t, h = g.ends(reid)
            delta = self.values[h] - self.values[t]
            if reid in zero:
                assert delta == 0, "nonzero slope on source"
            else:
                assert abs(delta) == g.length(reid), "slope not +-1 off source"

    def value(self, p: Point) -> Fraction:
        """Distance at any base point."""
        rp = self.refinement.to_refined_point(p)
        if rp.is_vertex:
            return self.values[rp.id]
        t, h = self.refinement.graph.ends(rp.id)
        ell = self.refinement.graph.length(rp.id)
        return min(self.values[t] + rp.offset, self.values[h] + ell - rp.offset)

    def ridge_points(self):
        """Interior points where two descent directions meet, as base points."""
        return self.ridge_base_points


def distance_field(graph: MetricGraph, source) -> DistanceField:
    if not isinstance(source, Point):
        source = frozenset(source)
    return DistanceField(graph, source)


def _eval_on(ref: Refinement, dist, p: Point) -> Fraction:
    rp = ref.to_refined_point(p)
    if rp.is_vertex:
        return dist[rp.id]
    t, h = ref.graph.ends(rp.id)
    ell = ref.graph.length(rp.id)
    return min(dist[t] + rp.offset, dist[h] + ell - rp.offset)


# -- virtualization of vertex genus --------------------------------------


def virtualize(graph: MetricGraph, eps=1):
    """Replace vertex genus by loops of length eps; returns (graph, registry).

    The registry maps each vertex of positive genus to the ids of its loops.
    """
    eps = rat(eps)
    if eps <= 0:
        raise MalformedGraphError("loop length must be positive")
    vertices = [(v, 0) for v in graph.vertex_ids]
    edges = [(e, *graph.ends(e), graph.length(e)) for e in graph.edge_ids]
    registry = {}
    for v in graph.vertex_ids:
        loops = []
        for k in range(graph.genus_of(v)):
            lid = "%s!%d" % (v, k)
            edges.append((lid, v, v, eps))
            loops.append(lid)
        if loops:
            registry[v] = tuple(loops)
    return MetricGraph(vertices, edges), registry
