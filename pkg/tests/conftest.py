"""Shared fixtures and random graph generators."""

import random
from fractions import Fraction

import pytest

from tropcover import MetricGraph, free_cover


def build_k4():
    """Complete graph on A,B,C,D with unit edge lengths."""
    return MetricGraph(
        ["A", "B", "C", "D"],
        [
            ("AB", "A", "B", 1),
            ("AC", "A", "C", 1),
            ("AD", "A", "D", 1),
            ("BC", "B", "C", 1),
            ("BD", "B", "D", 1),
            ("CD", "C", "D", 1),
        ],
    )


@pytest.fixture
def k4():
    return build_k4()


@pytest.fixture
def cube_cover(k4):
    """The connected double cover of K4 with cube source."""
    return free_cover(k4, {"BC": 1, "BD": 1, "CD": 1})


@pytest.fixture
def dumbbell():
    """Two unit loops joined by a unit bridge."""
    return MetricGraph(
        ["u", "v"],
        [("lu", "u", "u", 1), ("bridge", "u", "v", 1), ("lv", "v", "v", 1)],
    )


@pytest.fixture
def unit_loop():
    return MetricGraph(["p"], [("loop", "p", "p", 1)])


@pytest.fixture
def theta_graph():
    """Two vertices joined by three parallel edges."""
    return MetricGraph(
        ["u", "v"],
        [("e1", "u", "v", 1), ("e2", "u", "v", 1), ("e3", "u", "v", 1)],
    )


def random_graph(rng, max_genus=4, unit_lengths=False, min_genus=0):
    """Random connected multigraph (loops allowed) of bounded genus."""
    while True:
        n = rng.randint(1, 5)
        vertices = ["v%d" % i for i in range(n)]
        # spanning tree first, then genus extra edges
        edges = []
        for i in range(1, n):
            j = rng.randrange(i)
            edges.append(("t%d" % i, vertices[j], vertices[i]))
        g = rng.randint(min_genus, max_genus)
        for k in range(g):
            a = rng.randrange(n)
            b = rng.randrange(n)
            edges.append(("x%d" % k, vertices[a], vertices[b]))
        if not edges:
            continue

        def length():
            if unit_lengths:
                return Fraction(1)
            return Fraction(rng.randint(1, 6), rng.randint(1, 4))

        return MetricGraph(
            vertices, [(e, t, h, length()) for e, t, h in edges]
        )


def random_3regular(rng, n):
    """Random connected 3-regular multigraph on n vertices (n even) via
    the pairing model; loops and parallel edges allowed."""
    assert n % 2 == 0
    while True:
        stubs = [i for i in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = []
        for k in range(0, len(stubs), 2):
            edges.append(
                ("e%d" % (k // 2), "v%d" % stubs[k], "v%d" % stubs[k + 1], 1)
            )
        graph = MetricGraph(["v%d" % i for i in range(n)], edges)
        if graph.is_connected():
            return graph


def random_divisor(rng, graph, degree=0, spread=3):
    """Random divisor with the given total degree, supported on vertices
    and integer edge points (lattice support on unit-length graphs)."""
    from tropcover import Divisor, Point

    pts = [Point.at_vertex(v) for v in graph.vertex_ids]
    coeffs = []
    for _ in range(spread):
        coeffs.append((rng.choice(pts), rng.randint(-2, 2)))
    D = Divisor(graph, coeffs)
    # fix up the degree at a random vertex
    delta = degree - D.degree()
    if delta:
        D = D + Divisor(graph, [(rng.choice(pts), delta)])
    return D
