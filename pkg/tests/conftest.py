import random

import pytest
from hypothesis import strategies as st

from hypermotif import Hypergraph

from oracles import random_hypergraph_edges


@st.composite
def small_hypergraphs(draw, max_n=8, max_m=12, sizes=(2, 3, 4)):
    n = draw(st.integers(3, max_n))
    m = draw(st.integers(1, max_m))
    edges = []
    for _ in range(m):
        s = draw(st.sampled_from([s for s in sizes if s <= n]))
        edges.append(draw(st.lists(st.integers(0, n - 1), min_size=s, max_size=s, unique=True)))
    return Hypergraph(edges, n=n)


@pytest.fixture
def toy():
    # two triangles joined through vertex 2, plus a nested pair at each end
    return Hypergraph([(0, 1, 2), (0, 1), (2, 3, 4), (3, 4), (4, 5)])


@pytest.fixture
def random_graphs():
    rng = random.Random(7)
    out = []
    for _ in range(12):
        n = rng.randint(5, 9)
        out.append(Hypergraph(random_hypergraph_edges(rng, n, rng.randint(4, 14)), n=n))
    return out


# (criterion, passed, detail) rows recorded by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
