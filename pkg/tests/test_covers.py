"""Double covers: construction, verification, divisor transport."""

import random
from fractions import Fraction

import pytest

from tropcover import (
    CoverError,
    CycleError,
    CycleSpace,
    Divisor,
    DoubleCover,
    MetricGraph,
    Point,
    cover_class,
    covers_isomorphic,
    covers_with_dilation,
    free_cover,
    free_covers,
    involution_divisor,
    is_principal,
    pullback,
    pullback_kernel,
    pushforward,
    two_torsion_divisor,
    verify_cover,
)
from conftest import random_3regular

TRIANGLE = frozenset(["BC", "BD", "CD"])
SQUARE = frozenset(["AC", "AD", "BC", "BD"])


def mid(graph, eid):
    return graph.point(eid, graph.length(eid) / 2)


def test_free_cover_counts(k4, dumbbell, unit_loop):
    assert len(free_covers(k4)) == 8
    assert len(free_covers(dumbbell)) == 4
    assert len(free_covers(unit_loop)) == 2
    tree = MetricGraph(["r", "s"], [("e", "r", "s", 1)])
    assert len(free_covers(tree)) == 1
    assert not free_covers(tree)[0].source.is_connected()


def test_all_free_covers_verify(k4):
    for cover in free_covers(k4):
        report = verify_cover(cover)
        assert report.ok, report.problems
        assert report.dilation == frozenset()


def test_unit_loop_covers(unit_loop):
    trivial, connected = free_covers(unit_loop)
    assert not trivial.source.is_connected()
    assert connected.source.is_connected()
    assert connected.source.genus() == 1
    total = sum(
        (connected.source.length(e) for e in connected.source.edge_ids),
        Fraction(0),
    )
    assert total == 2


def test_cube_structure(cube_cover):
    src = cube_cover.source
    assert src.is_connected()
    assert src.genus() == 5  # 2g - 1
    assert len(src.vertex_ids) == 8
    assert len(src.edge_ids) == 12
    assert all(src.valence(v) == 3 for v in src.vertex_ids)
    # the cube is bipartite: no odd cycles, so no triangles among lifts
    report = verify_cover(cube_cover)
    assert report.ok and report.dilation == frozenset()


def test_involution_is_sheet_swap(cube_cover):
    assert cube_cover.involution_v["A^0"] == "A^1"
    assert cube_cover.involution_v["A^1"] == "A^0"
    sharp, _ = cube_cover.source_sharp()
    D = Divisor(sharp, [(Point.at_vertex("A^0"), 1), (mid(sharp, "BC^0"), 2)])
    assert involution_divisor(cube_cover, involution_divisor(cube_cover, D)) == D


def test_pullback_two_torsion_divisors(cube_cover):
    k4 = cube_cover.target
    sharp, _ = cube_cover.source_sharp()
    D_tri = two_torsion_divisor(k4, TRIANGLE)
    up = pullback(cube_cover, D_tri)
    expected = Divisor(
        sharp,
        [(Point.at_vertex("A^0"), 3), (Point.at_vertex("A^1"), 3)]
        + [(mid(sharp, "%s^%d" % (e, s)), -1) for e in TRIANGLE for s in (0, 1)],
    )
    assert up == expected
    assert up.degree() == 0
    assert not is_principal(up)

    D_sq = two_torsion_divisor(k4, SQUARE)
    up_sq = pullback(cube_cover, D_sq)
    assert up_sq.degree() == 0
    assert not is_principal(up_sq)


def test_pushforward_pullback_is_doubling(cube_cover):
    k4 = cube_cover.target
    D = two_torsion_divisor(k4, TRIANGLE)
    assert pushforward(cube_cover, pullback(cube_cover, D)) == 2 * D
    x = Point.at_vertex("B^0")
    sharp, _ = cube_cover.source_sharp()
    d = Divisor(sharp, [(x, 1)])
    iota = involution_divisor(cube_cover, d)
    assert pushforward(cube_cover, d - iota).is_zero()


def test_pullback_kernel_free(cube_cover):
    assert pullback_kernel(cube_cover) == [frozenset()]


def test_dilated_covers_k4(k4):
    for cycle in (TRIANGLE, SQUARE):
        covers = covers_with_dilation(k4, cycle)
        assert len(covers) == 1  # complement is a forest: h = 0
        report = verify_cover(covers[0])
        assert report.ok, report.problems
        assert report.dilation == cycle
        assert pullback_kernel(covers[0]) == [frozenset(), cycle]


def test_dilated_triangle_geometry(k4):
    cover = covers_with_dilation(k4, TRIANGLE)[0]
    src = cover.source
    # the triangle maps isometrically onto itself at half length
    for e in TRIANGLE:
        assert src.length("%s~" % e) == Fraction(1, 2)
        assert cover.edge_map["%s~" % e] == (e, 2)
    # dilated vertices carry genus deg/2 - 1 = 0 on the triangle
    assert all(src.genus_of("%s~" % v) == 0 for v in "BCD")
    sharp, registry = cover.source_sharp()
    assert sharp.genus() == 5  # 2g - 1 still


def test_dilated_all_edges():
    """Dilating every edge of the theta graph gives genus-carrying vertices."""
    g = MetricGraph(
        ["u", "v"],
        [("e1", "u", "v", 1), ("e2", "u", "v", 1), ("e3", "u", "v", 1)],
    )
    gamma = frozenset(["e1", "e2"])
    covers = covers_with_dilation(g, gamma)
    assert len(covers) == 1
    assert verify_cover(covers[0]).ok


def test_dumbbell_dilated_loop(dumbbell):
    covers = covers_with_dilation(dumbbell, frozenset(["lu"]))
    assert len(covers) == 2  # complement retains the other loop: h = 1
    for c in covers:
        assert verify_cover(c).ok, verify_cover(c).problems
    assert not covers_isomorphic(covers[0], covers[1])


def test_cover_errors(k4):
    with pytest.raises(CycleError):
        covers_with_dilation(k4, frozenset())
    with pytest.raises(CycleError):
        covers_with_dilation(k4, frozenset(["AB"]))
    with pytest.raises(CoverError):
        free_cover(k4, {"AB": 1})  # AB is a tree edge


def test_verify_rejects_corrupted_cover(cube_cover):
    src = cube_cover.source
    edges = []
    for e in src.edge_ids:
        t, h = src.ends(e)
        ell = src.length(e)
        if e == "BC^0":
            ell = ell / 2
        edges.append((e, t, h, ell))
    bad_src = MetricGraph(list(src.vertex_ids), edges)
    bad = DoubleCover(
        cube_cover.target,
        bad_src,
        cube_cover.vertex_map,
        cube_cover.edge_map,
        cube_cover.involution_v,
    )
    report = verify_cover(bad)
    assert not report.ok
    assert any("metric" in p for p in report.problems)


def test_cover_isomorphism_classes(k4):
    covers = free_covers(k4)
    classes = {cover_class(c) for c in covers}
    assert len(classes) == 8  # pairwise non-isomorphic over K4


def test_three_regular_identity():
    rng = random.Random(61)
    for _ in range(10):
        g = random_3regular(rng, rng.choice([4, 6]))
        genus = g.genus()
        for gamma in CycleSpace(g).even_subgraphs():
            keep = [e for e in g.edge_ids if e not in gamma]
            complement = MetricGraph(
                list(g.vertex_ids),
                [(e, g.ends(e)[0], g.ends(e)[1], g.length(e)) for e in keep],
            )
            m = len(complement.components())
            h = complement.genus()
            assert len(gamma) == genus + m - h - 1
