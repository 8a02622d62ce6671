"""Theta characteristics and their two-torsion differences."""

import random
from fractions import Fraction

import pytest

from tropcover import (
    AugmentedGraphError,
    CycleError,
    CycleSpace,
    Divisor,
    MetricGraph,
    Point,
    abel_jacobi,
    canonical,
    canonical_divisor,
    enumerate_theta,
    equivalent,
    period_lattice,
    theta_characteristic,
    torsion_points,
    two_torsion_divisor,
)
from conftest import random_graph


def mid(eid):
    return Point.on_edge(eid, Fraction(1, 2))


def test_k4_basepoint_characteristic(k4):
    t = theta_characteristic(k4, p=Point.at_vertex("A"))
    expected = Divisor(
        k4,
        [(Point.at_vertex("A"), -1), (mid("BC"), 1), (mid("BD"), 1), (mid("CD"), 1)],
    )
    assert t.divisor == expected
    assert not t.effective


def test_k4_triangle_characteristics(k4):
    for tri, opposite in [
        (("BC", "BD", "CD"), "A"),
        (("AC", "AD", "CD"), "B"),
        (("AB", "AD", "BD"), "C"),
        (("AB", "AC", "BC"), "D"),
    ]:
        t = theta_characteristic(k4, frozenset(tri))
        assert t.divisor == Divisor(k4, [(Point.at_vertex(opposite), 2)])
        assert t.effective


def test_k4_square_characteristics(k4):
    for square, chords in [
        (("AC", "AD", "BC", "BD"), ("AB", "CD")),
        (("AB", "AD", "BC", "CD"), ("AC", "BD")),
        (("AB", "AC", "BD", "CD"), ("AD", "BC")),
    ]:
        t = theta_characteristic(k4, frozenset(square))
        assert t.divisor == Divisor(k4, [(mid(chords[0]), 1), (mid(chords[1]), 1)])


def test_k4_census(k4):
    chars = enumerate_theta(k4)
    assert len(chars) == 8
    assert sum(1 for t in chars if not t.effective) == 1


def test_unit_loop_and_tree(unit_loop):
    chars = enumerate_theta(unit_loop)
    assert len(chars) == 2
    l0 = next(t for t in chars if t.cycle == frozenset())
    assert l0.divisor == Divisor(
        unit_loop, [(Point.at_vertex("p"), -1), (mid("loop"), 1)]
    )
    lloop = next(t for t in chars if t.cycle)
    assert lloop.divisor.is_zero() and lloop.effective

    tree = MetricGraph(["r", "s"], [("e", "r", "s", 2)])
    chars = enumerate_theta(tree)
    assert len(chars) == 1
    assert chars[0].divisor.degree() == -1
    assert not chars[0].effective


def test_rejects_bad_inputs(k4):
    with pytest.raises(CycleError):
        theta_characteristic(k4, frozenset(["AB"]))
    aug = MetricGraph([("w", 1)], [("l", "w", "w", 1)])
    with pytest.raises(AugmentedGraphError):
        theta_characteristic(aug)


def test_degree_is_genus_minus_one():
    rng = random.Random(41)
    for _ in range(10):
        g = random_graph(rng, max_genus=3)
        for t in enumerate_theta(g):
            assert t.divisor.degree() == g.genus() - 1


def test_double_is_canonical():
    rng = random.Random(43)
    for _ in range(6):
        g = random_graph(rng, max_genus=3)
        K = canonical_divisor(g)
        for t in enumerate_theta(g):
            assert equivalent(2 * t.divisor, K)


def test_basepoint_independence():
    rng = random.Random(47)
    for _ in range(6):
        g = random_graph(rng, max_genus=3, min_genus=1)
        base = theta_characteristic(g).divisor
        for _ in range(3):
            e = rng.choice(g.edge_ids)
            p = g.point(e, g.length(e) * Fraction(rng.randint(0, 4), 4))
            assert equivalent(theta_characteristic(g, p=p).divisor, base)


def test_torsion_bijection():
    rng = random.Random(53)
    for _ in range(5):
        g = random_graph(rng, max_genus=3, min_genus=1)
        lat = period_lattice(g)
        cs = CycleSpace(g)
        classes = set()
        for c in cs.even_subgraphs():
            v, _ = abel_jacobi(lat, two_torsion_divisor(g, c))
            classes.add(canonical(lat, v))
        assert classes == set(torsion_points(lat, 2))


def test_torsion_homomorphism(k4):
    lat = period_lattice(k4)
    cs = CycleSpace(k4)
    evens = cs.even_subgraphs()
    rng = random.Random(59)
    for _ in range(10):
        a, b = rng.choice(evens), rng.choice(evens)
        da = two_torsion_divisor(k4, a)
        db = two_torsion_divisor(k4, b)
        dab = two_torsion_divisor(k4, a ^ b)
        assert equivalent(dab, da + db)
