import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from cwkit.expr import Create, Join, Union, union_all
from cwkit.graph import Graph
from cwkit.uig import random_uig


def pytest_terminal_summary(terminalreporter):
    lines = getattr(terminalreporter.config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    """Report one acceptance criterion: record(number, ok, detail)."""
    config = request.config
    if not hasattr(config, "acceptance_lines"):
        config.acceptance_lines = []

    def emit(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        config.acceptance_lines.append((number, line))
        print(line)

    return emit


def atlas_graphs(max_n=7):
    """Every graph on 1..max_n vertices (one per isomorphism class), ids x0, x1, ..."""
    import networkx as nx
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        out.append(Graph([f"x{v}" for v in G.nodes], [(f"x{a}", f"x{b}") for a, b in G.edges]))
    return out


def random_graph(n, p, seed):
    rng = random.Random(seed)
    vs = [f"r{i}" for i in range(n)]
    return Graph(vs, [e for e in combinations(vs, 2) if rng.random() < p])


def naive_expression(g):
    """One label per vertex; width |V|."""
    label = {v: i + 1 for i, v in enumerate(g.vertices)}
    e = union_all([Create(label[v], v) for v in g.vertices])
    for u, v in g.edges():
        e = Join(label[u], label[v], e)
    return e


@st.composite
def uig_strategy(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    spread = draw(st.sampled_from(["0", "1/2", "1", "2", "3", "5", "9"]))
    seed = draw(st.integers(0, 10 ** 6))
    return random_uig(n, spread, seed)


@pytest.fixture(scope="session")
def small_atlas():
    return atlas_graphs(7)
