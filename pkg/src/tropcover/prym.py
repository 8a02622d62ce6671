"""Prym varieties of double covers and the two-torsion pairing.

The involution of a cover acts on the cycle space of its (virtualized)
source; the Prym variety is the image of (1 - involution) inside the
tropical Jacobian.  Membership is an exact lattice question, and the
mod-2 pairing of a free cover against an even subgraph reads off whether
the pulled-back two-torsion divisor lands in the Prym.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from . import linalg
from .covers import DoubleCover, free_covers, pullback, pushforward
from .divisors import Divisor, is_principal
from .errors import CoverError, DegreeError, PrymError
from .graphs import CycleSpace, Point
from .jacobian import abel_jacobi, period_lattice
from .theta import two_torsion_divisor


class HomologyAction:
    """Involution action on the cycle space of the virtualized source."""

    def __init__(self, cover: DoubleCover, eps=1):
        self.cover = cover
        self.eps = eps
        self.sharp, self.registry = cover.source_sharp(eps)
        self.lattice = period_lattice(self.sharp)
        cs = self.lattice.cycles
        g = len(cs.basis)
        self.matrix = []  # row j = coordinates of the image of basis cycle j
        for cyc in cs.basis:
            image = {}
            for eid, c in cyc.items():
                ie, sign = self._iota_edge(eid)
                image[ie] = image.get(ie, 0) + sign * c
            self.matrix.append(
                [Fraction(image.get(nt, 0)) for nt in cs.nontree]
            )
        self.target_lattice = period_lattice(cover.target)
        # pushforward matrix: row i expresses the target cycle i pulled
        # back along the cover (degree-weighted) in the source basis, so
        # that P . source coords = target coords of the pushforward
        self.push_matrix = []
        for tcyc in self.target_lattice.cycles.basis:
            lifted = {}
            for se, (te, d) in cover.edge_map.items():
                c = tcyc.get(te, 0)
                if c:
                    lifted[se] = d * c
            self.push_matrix.append(
                [Fraction(lifted.get(nt, 0)) for nt in cs.nontree]
            )

    def _iota_edge(self, eid: str) -> Tuple[str, int]:
        """Image of an oriented edge under the involution, with sign."""
        if eid in self.cover.edge_map:
            if self.cover.edge_map[eid][1] == 2:
                return eid, 1  # dilated edges are fixed pointwise
            return self.cover.involution_e[eid], 1
        return eid, -1  # virtual loops are reversed in place

    def act(self, v) -> List[Fraction]:
        """Image of a coordinate vector under the induced involution."""
        return linalg.mat_vec(self.matrix, list(v))

    def fixed_complement_rank(self) -> int:
        """rank(Id - involution), the dimension of the Prym."""
        g = len(self.matrix)
        return linalg.rank(linalg.mat_sub(linalg.identity(g), self.matrix))

    def _membership_data(self):
        """(nullspace rows of Id - J, projected lattice generators), cached."""
        if not hasattr(self, "_mdata"):
            g = len(self.matrix)
            diff = linalg.mat_sub(linalg.identity(g), self.matrix)
            null = linalg.left_nullspace(diff)
            gens = []
            if null:
                proj = linalg.mat_mul(null, self.lattice.gram)
                gens = [[row[j] for row in proj] for j in range(g)]
            self._mdata = (null, gens)
        return self._mdata


def homology_action(cover: DoubleCover, eps=1) -> HomologyAction:
    """Memoized per cover and virtual-loop length."""
    cache = getattr(cover, "_action_cache", None)
    if cache is None:
        cache = cover._action_cache = {}
    key = Fraction(eps)
    if key not in cache:
        cache[key] = HomologyAction(cover, eps)
    return cache[key]


def prym_contains(cover: DoubleCover, D: Divisor, eps=1) -> bool:
    """Whether the class of D lies in the Prym variety of the cover.

    D must be a degree-0 divisor on the virtualized source.  The class is
    in the Prym iff it is the image of a degree-0 class under
    (1 - involution); in particular its pushforward must be principal.
    """
    sharp, _ = cover.source_sharp(eps)
    if not D.graph.same_model(sharp):
        raise CoverError("divisor does not live on the virtualized source")
    if D.degree() != 0:
        raise DegreeError("prym membership needs a degree-0 divisor")
    if not is_principal(pushforward(cover, D, eps)):
        raise PrymError("the pushforward is not principal")
    if not sharp.is_connected():
        # the source splits into two copies of the target; the image of
        # (1 - involution) on total-degree-0 classes is exactly the part
        # with even degree on each copy
        return all(d % 2 == 0 for d in D.component_degrees().values())
    act = homology_action(cover, eps)
    if len(act.matrix) == 0:
        return True
    null, gens = act._membership_data()
    if not null:
        return True
    v, _ = abel_jacobi(act.lattice, D)
    return linalg.in_lattice(gens, linalg.mat_vec(null, v))


def kernel_component_count(cover: DoubleCover, eps=1) -> int:
    """Components of the norm-map kernel: 1 (dilated) or 2 (free)."""
    sharp, _ = cover.source_sharp(eps)
    moved = next(
        (v for v in sharp.vertex_ids if cover.involution_v.get(v, v) != v), None
    )
    if moved is None:
        return 1
    other = cover.involution_v[moved]
    D = Divisor(
        sharp, [(Point.at_vertex(moved), 1), (Point.at_vertex(other), -1)]
    )
    return 1 if prym_contains(cover, D, eps) else 2


def weil_pairing(cover: DoubleCover, cycle, eps=1) -> int:
    """Mod-2 pairing of a free cover with an even subgraph's torsion class."""
    if cover.dilation:
        raise CoverError("the pairing is defined for free covers only")
    D = two_torsion_divisor(cover.target, cycle)
    return 0 if prym_contains(cover, pullback(cover, D, eps), eps) else 1


def pairing_table(graph, eps=1):
    """(even subgraphs, matrix): rows follow free_covers order, columns the
    even-subgraph order, entries the mod-2 pairing."""
    evens = CycleSpace(graph).even_subgraphs()
    covers = free_covers(graph)
    torsion = [two_torsion_divisor(graph, s) for s in evens]
    table = [
        [0 if prym_contains(c, pullback(c, D, eps), eps) else 1 for D in torsion]
        for c in covers
    ]
    return evens, table
