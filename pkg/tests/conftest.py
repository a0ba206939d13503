import random

import pytest
from hypothesis import strategies as st

from mlstp.graph import build_graph
from mlstp.instances import InstanceSpec, greedy_trap

# label ids used by the small hand-checkable graph
LA, LB = 0, 1

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def four():
    """4 vertices, edges (0,1,a), (2,3,a), (1,2,b)."""
    return build_graph(4, 2, [(0, 1, LA), (2, 3, LA), (1, 2, LB)])


@pytest.fixture
def mono():
    return build_graph(5, 1, [(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0), (0, 4, 0)])


@pytest.fixture
def trap():
    return greedy_trap()


def oracle_specs(count=200, seed=2024):
    """Small generator specs with n in [4, 10], l in [3, 8], d in {0.2, 0.5, 0.8}."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        spec = InstanceSpec(rng.randint(4, 10), rng.randint(3, 8), rng.choice((0.2, 0.5, 0.8)), seed, len(out))
        if spec.m >= spec.n - 1:
            out.append(spec)
    return out


@st.composite
def connected_graphs(draw, max_n=9, max_l=6, max_extra=12):
    """Random spanning tree plus extra edges, random labels; parallel edges allowed."""
    n = draw(st.integers(2, max_n))
    l = draw(st.integers(1, max_l))
    label = st.integers(0, l - 1)
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v, draw(label)))
    for _ in range(draw(st.integers(0, max_extra))):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1).filter(lambda x: x != u))
        edges.append((u, v, draw(label)))
    order = draw(st.permutations(range(len(edges))))
    return build_graph(n, l, [edges[i] for i in order])
