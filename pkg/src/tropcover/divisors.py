"""Divisors and piecewise linear functions on metric graphs.

Linear equivalence is decided two ways: through the period lattice (the
default, see jacobian.py) and through chip-firing on a unit subdivision,
which also yields q-reduced representatives via Dhar's burning algorithm.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, Optional

from . import linalg
from .errors import DegreeError, PointError, SlopeError
from .graphs import MetricGraph, Point, Refinement, refine
from .rationals import rat

ZERO = Fraction(0)


class Divisor:
    """Finite integer combination of points of a host graph."""

    def __init__(self, graph: MetricGraph, coeffs=()):
        self.graph = graph
        acc: Dict[Point, int] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for p, a in items:
            p = graph.check_point(p)
            a = int(a)
            if a:
                acc[p] = acc.get(p, 0) + a
        self._coeffs = {p: a for p, a in acc.items() if a}

    @staticmethod
    def zero(graph: MetricGraph) -> "Divisor":
        return Divisor(graph)

    def coeff(self, p: Point) -> int:
        return self._coeffs.get(self.graph.check_point(p), 0)

    def support(self):
        return tuple(sorted(self._coeffs))

    def items(self):
        return tuple((p, self._coeffs[p]) for p in self.support())

    def degree(self) -> int:
        return sum(self._coeffs.values())

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self._coeffs.values())

    def is_zero(self) -> bool:
        return not self._coeffs

    def _require_same_host(self, other: "Divisor"):
        if not self.graph.same_model(other.graph):
            raise PointError("divisors live on different graphs")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._require_same_host(other)
        out = dict(self._coeffs)
        for p, a in other._coeffs.items():
            out[p] = out.get(p, 0) + a
        return Divisor(self.graph, out)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor(self.graph, {p: -a for p, a in self._coeffs.items()})

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor(self.graph, {p: k * a for p, a in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Divisor)
            and self.graph.same_model(other.graph)
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash(self.items())

    def __repr__(self):
        if not self._coeffs:
            return "Divisor(0)"
        return "Divisor(%s)" % " + ".join(
            "%d*%r" % (a, p) for p, a in self.items()
        )

    def map_points(self, graph: MetricGraph, fn) -> "Divisor":
        """Push every support point through fn onto another host graph."""
        return Divisor(graph, [(fn(p), a) for p, a in self.items()])

    def component_degrees(self):
        """Degree per connected component, keyed by the component tuple."""
        comps = self.graph.components()
        degs = {comp: 0 for comp in comps}
        for p, a in self._coeffs.items():
            vid = p.id if p.is_vertex else self.graph.ends(p.id)[0]
            for comp in comps:
                if vid in comp:
                    degs[comp] += a
                    break
        return degs


def canonical_divisor(graph: MetricGraph) -> Divisor:
    """K with K(v) = valence(v) - 2 + 2 genus(v), supported on model vertices."""
    return Divisor(
        graph,
        [
            (Point.at_vertex(v), graph.valence(v) - 2 + 2 * graph.genus_of(v))
            for v in graph.vertex_ids
        ],
    )


# -- piecewise linear functions ------------------------------------------


class PLFunction:
    """Continuous piecewise linear function with values on a refinement."""

    def __init__(self, refinement: Refinement, values: Dict[str, Fraction]):
        self.refinement = refinement
        self.graph = refinement.base
        self.values = {v: rat(x) for v, x in values.items()}
        for v in refinement.graph.vertex_ids:
            if v not in self.values:
                raise PointError("missing value at refinement vertex %r" % v)

    @staticmethod
    def from_distance_field(field) -> "PLFunction":
        return PLFunction(field.refinement, dict(field.values))

    def value(self, p: Point) -> Fraction:
        rp = self.refinement.to_refined_point(p)
        if rp.is_vertex:
            return self.values[rp.id]
        t, h = self.refinement.graph.ends(rp.id)
        ell = self.refinement.graph.length(rp.id)
        vt, vh = self.values[t], self.values[h]
        return vt + (vh - vt) * rp.offset / ell

    def _breakpoints(self):
        pts = []
        for v in self.refinement.graph.vertex_ids:
            pts.append(self.refinement.to_base_point(Point.at_vertex(v)))
        return pts

    def _combine(self, other: "PLFunction", sign: int) -> "PLFunction":
        if not self.graph.same_model(other.graph):
            raise PointError("functions live on different graphs")
        ref = refine(self.graph, self._breakpoints() + other._breakpoints())
        vals = {}
        for v in ref.graph.vertex_ids:
            bp = ref.to_base_point(Point.at_vertex(v))
            vals[v] = self.value(bp) + sign * other.value(bp)
        return PLFunction(ref, vals)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)


def divisor_of(f: PLFunction) -> Divisor:
    """div(f): at each point, the sum of incoming slopes of f."""
    g = f.refinement.graph
    ords = {v: Fraction(0) for v in g.vertex_ids}
    for eid in g.edge_ids:
        t, h = g.ends(eid)
        ell = g.length(eid)
        slope = (f.values[h] - f.values[t]) / ell
        if slope.denominator != 1:
            raise SlopeError("non-integer slope %s on segment %r" % (slope, eid))
        # incoming slope at h is +slope (f rises toward h), at t -slope
        ords[h] += slope
        ords[t] -= slope
    div = Divisor(
        f.graph,
        [
            (f.refinement.to_base_point(Point.at_vertex(v)), int(a))
            for v, a in ords.items()
            if a
        ],
    )
    assert div.degree() == 0
    return div


# -- unit subdivision and chip-firing ------------------------------------


class UnitSubdivision:
    """Combinatorial model: every edge split into segments of equal length 1/L.

    L is the lcm of the denominators of the edge lengths and of the offsets
    of the prescribed points, so all of those become vertices.
    """

    def __init__(self, graph: MetricGraph, points: Iterable[Point] = ()):
        denoms = [graph.length(e).denominator for e in graph.edge_ids]
        for p in points:
            p = graph.check_point(p)
            if not p.is_vertex:
                denoms.append(p.offset.denominator)
        self.scale = lcm(*denoms) if denoms else 1
        step = Fraction(1, self.scale)
        cuts = []
        for eid in graph.edge_ids:
            n = graph.length(eid) * self.scale
            assert n.denominator == 1
            for k in range(1, int(n)):
                cuts.append(graph.point(eid, k * step))
        self.refinement = refine(graph, cuts)
        self.graph = graph

    def vertex_of(self, p: Point) -> str:
        rp = self.refinement.to_refined_point(p)
        if not rp.is_vertex:
            raise PointError("point %r is not a lattice point" % (p,))
        return rp.id

    def to_divisor(self, chips: Dict[str, int]) -> Divisor:
        return Divisor(
            self.graph,
            [
                (self.refinement.to_base_point(Point.at_vertex(v)), a)
                for v, a in chips.items()
                if a
            ],
        )

    def neighbors(self):
        """v -> {u: multiplicity}; loops are dropped (they never move chips)."""
        g = self.refinement.graph
        nbr = {v: {} for v in g.vertex_ids}
        for eid in g.edge_ids:
            t, h = g.ends(eid)
            if t == h:
                continue
            nbr[t][h] = nbr[t].get(h, 0) + 1
            nbr[h][t] = nbr[h].get(t, 0) + 1
        return nbr


def _bfs_order(nbr, q):
    order = [q]
    seen = {q}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for u in sorted(nbr[v]):
            if u not in seen:
                seen.add(u)
                order.append(u)
    return order


def _fire_set(chips, nbr, fire):
    for v in fire:
        for u, m in nbr[v].items():
            if u not in fire:
                chips[v] -= m
                chips[u] += m


def reduce_at(D: Divisor, q: Point) -> Divisor:
    """The q-reduced representative of D on the unit subdivision."""
    graph = D.graph
    q = graph.check_point(q)
    sub = UnitSubdivision(graph, list(D.support()) + [q])
    nbr = sub.neighbors()
    chips = {v: 0 for v in sub.refinement.graph.vertex_ids}
    for p, a in D.items():
        chips[sub.vertex_of(p)] += a
    qv = sub.vertex_of(q)
    order = _bfs_order(nbr, qv)
    if len(order) != len(chips):
        raise PointError("graph is disconnected; reduce_at needs a connected host")

    # phase 1: make chips nonnegative away from q by firing prefix sets
    for j in range(len(order) - 1, 0, -1):
        prefix = set(order[:j])
        target = order[j]
        while chips[target] < 0:
            _fire_set(chips, nbr, prefix)

    # phase 2: Dhar's burning algorithm
    while True:
        burnt = {qv}
        hot = [qv]
        exposure = {v: 0 for v in chips}
        while hot:
            v = hot.pop()
            for u, m in nbr[v].items():
                if u in burnt:
                    continue
                exposure[u] += m
                if exposure[u] > chips[u]:
                    burnt.add(u)
                    hot.append(u)
        if len(burnt) == len(chips):
            break
        _fire_set(chips, nbr, set(chips) - burnt)

    return sub.to_divisor(chips)


# -- principality and equivalence ----------------------------------------


def is_principal(D: Divisor) -> bool:
    """Whether D = div(f) for some integer-slope PL function (lattice route)."""
    from .jacobian import abel_jacobi, lattice_contains, period_lattice

    if any(d != 0 for d in D.component_degrees().values()):
        if D.degree() != 0:
            raise DegreeError("is_principal needs a degree-0 divisor")
        return False
    lat = period_lattice(D.graph)
    v, _ = abel_jacobi(lat, D)
    return lattice_contains(lat, v)


def principal_function(D: Divisor) -> Optional[PLFunction]:
    """A PL function f with div(f) = D, or None if D is not principal.

    Found by solving the length-weighted Laplacian on a refinement at
    supp(D); the solution is the unique harmonic candidate, and D is
    principal exactly when its slopes are all integers.
    """
    if any(d != 0 for d in D.component_degrees().values()):
        return None
    ref = refine(D.graph, list(D.support()))
    g = ref.graph
    want = {v: 0 for v in g.vertex_ids}
    for p, a in D.items():
        rp = ref.to_refined_point(p)
        want[rp.id] = a
    values = {}
    for comp in g.components():
        idx = {v: i for i, v in enumerate(comp)}
        n = len(comp)
        lap = [[Fraction(0)] * n for _ in range(n)]
        for eid in g.edge_ids:
            t, h = g.ends(eid)
            if t not in idx or t == h:
                continue
            w = 1 / g.length(eid)
            lap[idx[t]][idx[t]] += w
            lap[idx[h]][idx[h]] += w
            lap[idx[t]][idx[h]] -= w
            lap[idx[h]][idx[t]] -= w
        # ord_v(f) = (L f)(v) under the incoming-slope convention;
        # pin the first vertex to 0
        rhs = [Fraction(want[v]) for v in comp]
        if n == 1:
            values[comp[0]] = ZERO
            continue
        sys_rows = [row[1:] for row in lap[1:]]
        sol = linalg.solve(sys_rows, rhs[1:])
        values[comp[0]] = ZERO
        for v in comp[1:]:
            values[v] = sol[idx[v] - 1]
    f = PLFunction(ref, values)
    try:
        got = divisor_of(f)
    except SlopeError:
        return None
    return f if got == D else None


def equivalent(D1: Divisor, D2: Divisor) -> bool:
    D1._require_same_host(D2)
    if D1.degree() != D2.degree():
        return False
    return is_principal(D1 - D2)


def effective_representative(D: Divisor) -> Optional[Divisor]:
    """An effective divisor equivalent to D, or None if the class has none.

    The class is effective iff its q-reduced form is effective, q being the
    first model vertex.
    """
    if D.degree() < 0:
        return None
    red = reduce_at(D, Point.at_vertex(D.graph.vertex_ids[0]))
    return red if red.is_effective() else None


def laplacian_image_contains(graph: MetricGraph, D: Divisor) -> bool:
    """Discrete oracle: D lies in the integer image of the unit-subdivision
    Laplacian.  Independent of the period-lattice route."""
    sub = UnitSubdivision(graph, list(D.support()))
    nbr = sub.neighbors()
    verts = sub.refinement.graph.vertex_ids
    idx = {v: i for i, v in enumerate(verts)}
    chips = [0] * len(verts)
    for p, a in D.items():
        chips[idx[sub.vertex_of(p)]] += a
    cols = []
    for v in verts:
        col = [0] * len(verts)
        deg = sum(nbr[v].values())
        col[idx[v]] = deg
        for u, m in nbr[v].items():
            col[idx[u]] = -m
        cols.append(col)
    return linalg.in_lattice(cols, chips)
