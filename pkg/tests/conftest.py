"""Shared fixtures and randomized instance generators."""

import random
from fractions import Fraction
from pathlib import Path

import pytest

from graphifs import (
    DoubleLoopParams,
    Edge,
    GraphIFS,
    Similarity,
    build_spanning_system,
    double_loop_ifs,
    example_params,
    nested_pair_ifs,
)

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture
def golden_params() -> DoubleLoopParams:
    """a=1/4, g_u=1/4, b=1/2; c=1/2, g_v=1/4, d=1/4 — the instance whose
    dimension is log of the golden-ratio conjugate base 1/2."""
    return DoubleLoopParams(
        Fraction(1, 4), Fraction(1, 4), Fraction(1, 2),
        Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))


@pytest.fixture
def golden_ifs(golden_params) -> GraphIFS:
    return double_loop_ifs(golden_params)


@pytest.fixture
def nested_ifs() -> GraphIFS:
    """Two components with F_u strictly inside F_v."""
    return nested_pair_ifs(Fraction(1, 4), Fraction(1, 2), Fraction(1, 8))


@pytest.fixture
def spanning_pair():
    """(GraphIFS, S) for the reference gap-spanning system."""
    return build_spanning_system(example_params())


def random_double_loop_params(rng: random.Random,
                              max_denominator: int = 64) -> DoubleLoopParams:
    """A uniform valid double-loop parameter set with both rows over a
    single denominator <= max_denominator."""

    def row():
        q = rng.randint(4, max_denominator)
        i = rng.randint(1, q - 2)
        j = rng.randint(i + 1, q - 1)
        return Fraction(i, q), Fraction(j - i, q), Fraction(q - j, q)

    a, g_u, b = row()
    c, g_v, d = row()
    return DoubleLoopParams(a, g_u, b, c, g_v, d)


def random_small_graph(rng: random.Random, max_vertices: int = 4) -> GraphIFS:
    """A random valid, CSSC, unit-interval-normalized graph.

    Each vertex gets 2 or 3 out-edges laid out in disjoint slots of [0,1];
    the first edge fixes 0 and the last fixes 1, and both target the next
    vertex around a ring, which guarantees strong connectivity and an
    endpoint-fixing cycle through every vertex.
    """
    n = rng.randint(1, max_vertices)
    vertices = tuple(f"v{i}" for i in range(n))
    edges = []
    counter = 0
    for i, v in enumerate(vertices):
        m = rng.randint(2, 3)
        slot = Fraction(1, 2 * m)
        ring = vertices[(i + 1) % n]
        for pos in range(m):
            counter += 1
            ratio = slot if rng.random() < 0.5 else slot / 2
            if pos == 0:
                offset = Fraction(0)
                target = ring
            elif pos == m - 1:
                offset = 1 - ratio
                target = ring
            else:
                offset = Fraction(pos, m)
                target = rng.choice(vertices)
            edges.append(Edge(f"e{counter}", v, target,
                              Similarity(ratio, offset)))
    return GraphIFS(vertices, tuple(edges))
