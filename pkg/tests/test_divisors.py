"""Divisors, PL functions, reduction, and principality decisions."""

import random
from fractions import Fraction

import pytest

from tropcover import (
    DegreeError,
    Divisor,
    Point,
    canonical_divisor,
    distance_field,
    divisor_of,
    effective_representative,
    equivalent,
    is_principal,
    principal_function,
    reduce_at,
    theta_characteristic,
)
from tropcover.divisors import PLFunction, laplacian_image_contains
from conftest import random_divisor, random_graph


def mid(eid):
    return Point.on_edge(eid, Fraction(1, 2))


def test_divisor_arithmetic(k4):
    a = Divisor(k4, [(Point.at_vertex("A"), 2), (mid("BC"), -1)])
    b = Divisor(k4, [(Point.at_vertex("A"), -2), (mid("BC"), 1)])
    assert (a + b).is_zero()
    assert a.degree() == 1
    assert (-a) == b
    assert (2 * a).degree() == 2
    assert not a.is_effective()


def test_canonical_divisor(k4, unit_loop, dumbbell):
    K = canonical_divisor(k4)
    assert K.degree() == 2 * k4.genus() - 2
    assert all(a == 1 for _, a in K.items())
    assert canonical_divisor(unit_loop).degree() == 0
    assert canonical_divisor(dumbbell).degree() == 2


def test_divisor_of_constant_is_zero(k4):
    from tropcover import refine

    ref = refine(k4, [])
    f = PLFunction(ref, {v: Fraction(3) for v in ref.graph.vertex_ids})
    assert divisor_of(f).is_zero()


def test_divisor_of_loop_tent(unit_loop):
    """Rising with slope 1 to the antipode and back down."""
    field = distance_field(unit_loop, Point.at_vertex("p"))
    f = PLFunction.from_distance_field(field)
    d = divisor_of(f)
    expected = Divisor(
        unit_loop, [(Point.at_vertex("p"), -2), (mid("loop"), 2)]
    )
    assert d == expected


def test_theta_field_identity(k4):
    """The two distance fields differ by a function cutting out the
    difference of the doubled theta divisors."""
    tri = frozenset(["BC", "BD", "CD"])
    f_gamma = PLFunction.from_distance_field(distance_field(k4, tri))
    f_p = PLFunction.from_distance_field(
        distance_field(k4, Point.at_vertex("A"))
    )
    d = divisor_of(f_gamma - f_p)
    L_gamma = theta_characteristic(k4, tri).divisor
    L_0 = theta_characteristic(k4).divisor
    assert d == 2 * L_gamma - 2 * L_0


def test_reduce_zero_and_idempotence(k4):
    z = Divisor.zero(k4)
    q = Point.at_vertex("B")
    assert reduce_at(z, q).is_zero()
    rng = random.Random(3)
    for _ in range(10):
        g = random_graph(rng, max_genus=3, unit_lengths=True)
        D = random_divisor(rng, g, degree=rng.randint(-1, 2))
        q = Point.at_vertex(rng.choice(g.vertex_ids))
        red = reduce_at(D, q)
        assert reduce_at(red, q) == red
        assert equivalent(D, red)


def test_reduce_l0_fixed_point(k4):
    """The basepoint theta divisor is already reduced at its basepoint."""
    L0 = theta_characteristic(k4, p=Point.at_vertex("A")).divisor
    assert reduce_at(L0, Point.at_vertex("A")) == L0


def test_is_principal_basics(k4):
    assert is_principal(Divisor.zero(k4))
    with pytest.raises(DegreeError):
        is_principal(Divisor(k4, [(Point.at_vertex("A"), 1)]))
    tri = frozenset(["BC", "BD", "CD"])
    L_gamma = theta_characteristic(k4, tri).divisor
    L_0 = theta_characteristic(k4).divisor
    D = L_gamma - L_0
    assert not is_principal(D)
    assert is_principal(2 * D)


def test_principal_function_certificate(k4):
    tri = frozenset(["BC", "BD", "CD"])
    D = 2 * (
        theta_characteristic(k4, tri).divisor - theta_characteristic(k4).divisor
    )
    f = principal_function(D)
    assert f is not None
    assert divisor_of(f) == D
    assert principal_function(D + Divisor(k4, [(mid("BC"), 1), (Point.at_vertex("A"), -1)])) is None


def test_point_differences_on_circle():
    """On a circle, x - y is principal only when x = y; x - y is always
    2-torsion exactly for antipodal points."""
    from tropcover import MetricGraph

    circle = MetricGraph(["u"], [("c", "u", "u", 1)])
    u = Point.at_vertex("u")
    anti = Point.on_edge("c", Fraction(1, 2))
    third = Point.on_edge("c", Fraction(1, 3))
    assert not is_principal(Divisor(circle, [(u, 1), (anti, -1)]))
    assert not is_principal(Divisor(circle, [(u, 1), (third, -1)]))
    assert is_principal(2 * Divisor(circle, [(u, 1), (anti, -1)]))
    assert not is_principal(Divisor(circle, [(u, 2), (anti, -1), (third, -1)]))
    # both routes agree with the chip-firing oracle on the subdivision
    sixth = Point.on_edge("c", Fraction(5, 6))
    D = Divisor(circle, [(anti, 1), (third, 1), (sixth, -2)])
    assert is_principal(D) == laplacian_image_contains(circle, D)


def test_principal_matches_chip_firing_oracle():
    rng = random.Random(17)
    agree = 0
    for _ in range(60):
        g = random_graph(rng, max_genus=3, unit_lengths=True)
        D = random_divisor(rng, g, degree=0)
        assert is_principal(D) == laplacian_image_contains(g, D)
        agree += 1
    assert agree == 60


def test_equivalence_relation():
    rng = random.Random(29)
    for _ in range(5):
        g = random_graph(rng, max_genus=2, unit_lengths=True)
        a = random_divisor(rng, g, degree=1)
        b = random_divisor(rng, g, degree=1)
        c = random_divisor(rng, g, degree=1)
        assert equivalent(a, a)
        if equivalent(a, b):
            assert equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)


def test_effective_representative(k4):
    L0 = theta_characteristic(k4).divisor
    assert effective_representative(L0) is None
    tri = frozenset(["BC", "BD", "CD"])
    Ltri = theta_characteristic(k4, tri).divisor
    eff = effective_representative(Ltri)
    assert eff is not None and eff.is_effective()
    assert equivalent(eff, Ltri)
    E = Divisor(k4, [(Point.at_vertex("C"), 1)])
    assert effective_representative(E).is_effective()
