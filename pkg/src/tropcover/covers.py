"""Unramified degree-2 harmonic morphisms of metric graphs.

Free covers (no dilation) are classified by sheet-swap bits on the non-tree
edges of a spanning tree: 2^g of them, including the disconnected trivial
one.  Covers dilated along a nonempty even subgraph c map c's preimage by a
factor-2 stretch, carry vertex genus (deg_c(v)/2 - 1) there, and restrict
to a free cover over the complement; there are 2^h of them, h the sum of
the complement components' genera.

Naming: lifts of a vertex v are "v^0"/"v^1", its dilated preimage "v~";
likewise for edges.  Every lifted edge maps to its base edge preserving
orientation, so offsets transport directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .divisors import Divisor
from .errors import AugmentedGraphError, CoverError, CycleError
from .graphs import (
    CycleSpace,
    MetricGraph,
    Point,
    check_even_subgraph,
    virtualize,
)
from .rationals import rat

HALF = Fraction(1, 2)


class DoubleCover:
    """A degree-2 harmonic morphism onto an unaugmented target."""

    def __init__(self, target, source, vertex_map, edge_map, involution_v, bits=None):
        self.target = target
        self.source = source  # possibly augmented
        self.vertex_map = dict(vertex_map)  # src vid -> tgt vid
        self.edge_map = dict(edge_map)  # src eid -> (tgt eid, dilation degree)
        self.involution_v = dict(involution_v)
        self.bits = bits  # construction metadata (may be None for parsed covers)
        self.involution_e = self._pair_edges()
        self.dilation = frozenset(te for te, d in self.edge_map.values() if d == 2)
        self._sharp_cache = {}

    def _pair_edges(self):
        fibers: Dict[str, List[str]] = {}
        for se, (te, d) in self.edge_map.items():
            fibers.setdefault(te, []).append(se)
        out = {}
        for te, ses in fibers.items():
            ses = sorted(ses)
            if len(ses) == 1:
                if self.edge_map[ses[0]][1] != 2:
                    raise CoverError("edge %r has a single undilated lift" % te)
                out[ses[0]] = ses[0]
            elif len(ses) == 2:
                out[ses[0]], out[ses[1]] = ses[1], ses[0]
            else:
                raise CoverError("edge %r has %d lifts" % (te, len(ses)))
        return out

    # -- virtualized source ----------------------------------------------

    def source_sharp(self, eps=1):
        """(unaugmented source graph with virtual loops, loop registry)."""
        eps = rat(eps)
        if eps not in self._sharp_cache:
            self._sharp_cache[eps] = virtualize(self.source, eps)
        return self._sharp_cache[eps]

    def _loop_base(self, eid: str) -> Optional[str]:
        """Basepoint vertex if eid is a virtual loop id, else None."""
        if eid in self.edge_map:
            return None
        return eid.rsplit("!", 1)[0]

    # -- point maps -------------------------------------------------------

    def project_point(self, p: Point) -> Point:
        """Image in the target of a point of a virtualized source."""
        if p.is_vertex:
            return Point.at_vertex(self.vertex_map[p.id])
        base = self._loop_base(p.id)
        if base is not None:
            return Point.at_vertex(self.vertex_map[base])
        te, d = self.edge_map[p.id]
        return self.target.point(te, p.offset * d)

    def involute_point(self, p: Point, eps=1) -> Point:
        sharp, _ = self.source_sharp(eps)
        if p.is_vertex:
            return Point.at_vertex(self.involution_v.get(p.id, p.id))
        base = self._loop_base(p.id)
        if base is not None:
            return sharp.point(p.id, rat(eps) - p.offset)
        return sharp.point(self.involution_e[p.id], p.offset)

    def lifts_of_point(self, p: Point):
        """[(source point, local degree)] over a target point."""
        p = self.target.check_point(p)
        if p.is_vertex:
            out = []
            for sv, tv in sorted(self.vertex_map.items()):
                if tv == p.id:
                    d = 2 if self.involution_v.get(sv, sv) == sv else 1
                    out.append((Point.at_vertex(sv), d))
            return out
        out = []
        for se in sorted(self.edge_map):
            te, d = self.edge_map[se]
            if te == p.id:
                out.append((Point.on_edge(se, p.offset / d), d))
        return out


# -- construction --------------------------------------------------------


def _require_unaugmented(graph: MetricGraph):
    if graph.is_augmented():
        raise AugmentedGraphError("cover targets must be unaugmented")


def _interior_graph(graph: MetricGraph, cycle: frozenset):
    """Subgraph on off-cycle vertices with both-ends-off edges."""
    on = set()
    for eid in cycle:
        t, h = graph.ends(eid)
        on.add(t)
        on.add(h)
    verts = [v for v in graph.vertex_ids if v not in on]
    edges = []
    for eid in graph.edge_ids:
        if eid in cycle:
            continue
        t, h = graph.ends(eid)
        if t not in on and h not in on:
            edges.append((eid, t, h, graph.length(eid)))
    return MetricGraph(verts, edges), on


def _build_cover(graph: MetricGraph, cycle: frozenset, bits: Dict[str, int]):
    """Assemble the cover for one sheet-swap bit assignment.

    bits maps off-cycle edges with both endpoints off the cycle to 0/1;
    missing edges default to 0.
    """
    on_deg = {
        v: sum(1 for eid, _ in graph.ends_at(v) if eid in cycle)
        for v in graph.vertex_ids
    }

    vertices = []
    vmap = {}
    inv_v = {}
    for v in graph.vertex_ids:
        if on_deg[v]:
            dv = "%s~" % v
            vertices.append((dv, on_deg[v] // 2 - 1))
            vmap[dv] = v
            inv_v[dv] = dv
        else:
            for s in (0, 1):
                sv = "%s^%d" % (v, s)
                vertices.append((sv, 0))
                vmap[sv] = v
            inv_v["%s^0" % v] = "%s^1" % v
            inv_v["%s^1" % v] = "%s^0" % v

    def lift_vertex(v: str, sheet: int) -> str:
        return "%s~" % v if on_deg[v] else "%s^%d" % (v, sheet)

    edges = []
    emap = {}
    for eid in graph.edge_ids:
        t, h = graph.ends(eid)
        ell = graph.length(eid)
        if eid in cycle:
            de = "%s~" % eid
            edges.append((de, "%s~" % t, "%s~" % h, ell * HALF))
            emap[de] = (eid, 2)
        else:
            b = bits.get(eid, 0)
            for s in (0, 1):
                se = "%s^%d" % (eid, s)
                edges.append((se, lift_vertex(t, s), lift_vertex(h, s ^ b), ell))
                emap[se] = (eid, 1)
    source = MetricGraph(vertices, edges)
    return DoubleCover(graph, source, vmap, emap, inv_v, bits=dict(bits))


def free_covers(graph: MetricGraph) -> List[DoubleCover]:
    """All 2^g degree-2 covering spaces, in bit-vector order over the
    non-tree edges (the all-zero vector is the disconnected trivial cover)."""
    _require_unaugmented(graph)
    cs = CycleSpace(graph)
    out = []
    for mask in range(1 << len(cs.nontree)):
        bits = {e: mask >> i & 1 for i, e in enumerate(cs.nontree)}
        out.append(_build_cover(graph, frozenset(), bits))
    return out


def free_cover(graph: MetricGraph, bits: Dict[str, int]) -> DoubleCover:
    """One covering space from sheet-swap bits on the non-tree edges."""
    _require_unaugmented(graph)
    cs = CycleSpace(graph)
    unknown = set(bits) - set(cs.nontree)
    if unknown:
        raise CoverError("bits on tree edges or unknown edges: %s" % sorted(unknown))
    return _build_cover(graph, frozenset(), dict(bits))


def covers_with_dilation(graph: MetricGraph, cycle) -> List[DoubleCover]:
    """The 2^h unramified double covers dilated exactly along the cycle."""
    _require_unaugmented(graph)
    cycle = check_even_subgraph(graph, cycle)
    if not cycle:
        raise CycleError("dilation cycle must be nonempty; use free_covers")
    interior, _ = _interior_graph(graph, cycle)
    ics = CycleSpace(interior)
    out = []
    for mask in range(1 << len(ics.nontree)):
        bits = {e: mask >> i & 1 for i, e in enumerate(ics.nontree)}
        out.append(_build_cover(graph, cycle, bits))
    return out


# -- verification --------------------------------------------------------


@dataclass
class CoverReport:
    ok: bool
    dilation: frozenset
    problems: List[str] = field(default_factory=list)


def verify_cover(cover: DoubleCover) -> CoverReport:
    """Check every double-cover invariant; diagnostic, never raises."""
    problems = []
    tgt, src = cover.target, cover.source

    def complain(msg):
        problems.append(msg)

    if tgt.is_augmented():
        complain("target is augmented")

    # structural maps
    for sv in src.vertex_ids:
        if sv not in cover.vertex_map or cover.vertex_map[sv] not in tgt._genus:
            complain("vertex %r unmapped" % sv)
    for se in src.edge_ids:
        if se not in cover.edge_map:
            complain("edge %r unmapped" % se)
            continue
        te, d = cover.edge_map[se]
        if te not in tgt._edges or d not in (1, 2):
            complain("edge %r has a bad image" % se)
            continue
        st, sh = src.ends(se)
        tt, th = tgt.ends(te)
        if (cover.vertex_map.get(st), cover.vertex_map.get(sh)) != (tt, th):
            complain("edge %r does not map ends to ends" % se)
        if src.length(se) * d != tgt.length(te):
            complain("edge %r breaks metric compatibility" % se)
    if problems:
        return CoverReport(False, frozenset(), problems)

    # fibers carry total degree 2 over every edge
    deg_over = {te: 0 for te in tgt.edge_ids}
    for se, (te, d) in cover.edge_map.items():
        deg_over[te] += d
    for te, d in deg_over.items():
        if d != 2:
            complain("edge %r has fiber degree %d" % (te, d))

    # harmonicity and local degrees at vertices
    local_degree = {}
    for sv in src.vertex_ids:
        tv = cover.vertex_map[sv]
        per_direction = {}
        for te, tend in tgt.ends_at(tv):
            per_direction[(te, tend)] = 0
        for se, send in src.ends_at(sv):
            te, d = cover.edge_map[se]
            per_direction[(te, send)] += d
        degs = set(per_direction.values())
        if len(degs) != 1:
            complain("vertex %r is not harmonic" % sv)
            local_degree[sv] = max(degs) if degs else 0
        else:
            local_degree[sv] = degs.pop() if degs else 0

    # vertex fibers carry total degree 2
    fiber_deg = {tv: 0 for tv in tgt.vertex_ids}
    for sv, tv in cover.vertex_map.items():
        fiber_deg[tv] += local_degree.get(sv, 0)
    for tv, d in fiber_deg.items():
        if d != 2:
            complain("vertex %r has fiber degree %d" % (tv, d))

    # ramification: sum(d_end - 1) must be 2g+2 at dilated points, 2g else
    for sv in src.vertex_ids:
        excess = sum(cover.edge_map[se][1] - 1 for se, _ in src.ends_at(sv))
        want = 2 * src.genus_of(sv) + (2 if local_degree.get(sv) == 2 else 0)
        if excess != want:
            complain("vertex %r is ramified" % sv)

    # involution
    for sv in src.vertex_ids:
        isv = cover.involution_v.get(sv)
        if isv is None or cover.involution_v.get(isv) != sv:
            complain("involution is not involutive at %r" % sv)
        elif cover.vertex_map[isv] != cover.vertex_map[sv]:
            complain("involution does not commute with the cover at %r" % sv)
        elif isv == sv and local_degree.get(sv) != 2:
            complain("involution fixes the undilated vertex %r" % sv)
        elif isv != sv and local_degree.get(sv) == 2:
            complain("involution moves the dilated vertex %r" % sv)
    for se in src.edge_ids:
        ise = cover.involution_e.get(se)
        if ise is None:
            continue
        st, sh = src.ends(se)
        it, ih = src.ends(ise)
        if (cover.involution_v.get(st), cover.involution_v.get(sh)) != (it, ih):
            complain("edge involution breaks incidence at %r" % se)
        if src.length(se) != src.length(ise):
            complain("edge involution is not an isometry at %r" % se)

    dilation = frozenset(cover.dilation)
    from .graphs import is_even_subgraph

    if not is_even_subgraph(tgt, dilation):
        complain("dilation set is not an even subgraph")

    return CoverReport(not problems, dilation, problems)


# -- divisor transport ---------------------------------------------------


def pullback(cover: DoubleCover, D: Divisor, eps=1) -> Divisor:
    """phi^* D on the virtualized source."""
    sharp, _ = cover.source_sharp(eps)
    if not D.graph.same_model(cover.target):
        raise CoverError("divisor does not live on the cover target")
    out = []
    for p, a in D.items():
        for sp, d in cover.lifts_of_point(p):
            out.append((sp, d * a))
    return Divisor(sharp, out)


def pushforward(cover: DoubleCover, D: Divisor, eps=1) -> Divisor:
    """phi_* D for D on the virtualized source."""
    sharp, _ = cover.source_sharp(eps)
    if not D.graph.same_model(sharp):
        raise CoverError("divisor does not live on the virtualized source")
    return Divisor(cover.target, [(cover.project_point(p), a) for p, a in D.items()])


def involution_divisor(cover: DoubleCover, D: Divisor, eps=1) -> Divisor:
    sharp, _ = cover.source_sharp(eps)
    if not D.graph.same_model(sharp):
        raise CoverError("divisor does not live on the virtualized source")
    return Divisor(sharp, [(cover.involute_point(p, eps), a) for p, a in D.items()])


def pullback_kernel(cover: DoubleCover, eps=1):
    """Even subgraphs c with phi^* D_c principal, by exhaustive testing."""
    from .divisors import is_principal
    from .theta import two_torsion_divisor

    cs = CycleSpace(cover.target)
    out = []
    for c in cs.even_subgraphs():
        D = two_torsion_divisor(cover.target, c)
        if is_principal(pullback(cover, D, eps)):
            out.append(c)
    return out


# -- isomorphism invariant ------------------------------------------------


def cover_class(cover: DoubleCover):
    """Complete isomorphism invariant over a fixed target: the dilation
    cycle plus the sheet-swap monodromy on the interior fundamental cycles."""
    interior, _ = _interior_graph(cover.target, cover.dilation)
    ics = CycleSpace(interior)
    # label the two lifts of each off-cycle vertex by sorted source id
    label = {}
    for tv in interior.vertex_ids:
        lifts = sorted(
            sv for sv, t in cover.vertex_map.items() if t == tv
        )
        if len(lifts) != 2:
            raise CoverError("vertex %r has %d lifts" % (tv, len(lifts)))
        label[lifts[0]], label[lifts[1]] = 0, 1
    swap = {}
    for te in interior.edge_ids:
        tt, th = interior.ends(te)
        lifts = sorted(se for se, (t, _) in cover.edge_map.items() if t == te)
        st, sh = cover.source.ends(lifts[0])
        swap[te] = label[st] ^ label[sh]
    mono = tuple(
        sum(swap[e] for e in cyc) % 2
        for cyc in (set(c) for c in ics.basis)
    )
    return (cover.dilation, mono)


def covers_isomorphic(c1: DoubleCover, c2: DoubleCover) -> bool:
    """Isomorphism over a common target, commuting with the covering maps."""
    if not c1.target.same_model(c2.target):
        return False
    return cover_class(c1) == cover_class(c2)
