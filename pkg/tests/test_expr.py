import random

import pytest
from hypothesis import given, settings, strategies as st

from cwkit.canonical import cell_id, generate_h
from cwkit.errors import ParseError, PreconditionError, VerificationError
from cwkit.expr import (P5_TEXT, CompositionReport, Create, Join, PartScheme, Relabel, Union,
                        compose_partition, created_vertices, evaluate, labels_used, map_labels,
                        parse, path_expression, render, rename_vertices, restrict, size, union_all,
                        width)
from cwkit.graph import Graph, induced_subgraph, path_graph
from cwkit.uig import h_expression, random_uig

from conftest import naive_expression, random_graph


def random_expression(seed, n_vertices=8, labels=4):
    rng = random.Random(seed)
    pool = [Create(rng.randint(1, labels), f"w{i}") for i in range(n_vertices)]
    while len(pool) > 1 or rng.random() < 0.5:
        roll = rng.random()
        if roll < 0.4 and len(pool) > 1:
            a = pool.pop(rng.randrange(len(pool)))
            b = pool.pop(rng.randrange(len(pool)))
            pool.append(Union(a, b))
            continue
        i, j = rng.sample(range(1, labels + 1), 2)
        idx = rng.randrange(len(pool))
        pool[idx] = (Join if roll < 0.75 else Relabel)(i, j, pool[idx])
    return pool[0]


def test_inner_term_of_p5():
    lg = evaluate(parse("eta(2,1, union(create(2,b), create(1,a)))"))
    assert lg.graph == Graph("ab", [("a", "b")])
    assert lg.label_of == {"a": 1, "b": 2}


def test_create_alone():
    lg = evaluate(Create(1, "a"))
    assert lg.graph.vertices == ("a",) and lg.label_of == {"a": 1}
    assert width(Create(1, "a")) == 1


def test_p5_expression():
    e = parse(P5_TEXT)
    assert evaluate(e).graph == Graph("abcde", zip("abcd", "bcde"))
    assert width(e) == 3
    assert render(path_expression(list("abcde"))) == P5_TEXT


def test_parse_examples():
    assert parse("eta(2,1, union(create(2,b), create(1,a)))") == Join(2, 1, Union(Create(2, "b"), Create(1, "a")))
    assert parse("create(1,a)") == Create(1, "a")
    assert render(Create(1, "a")) == "create(1,a)"
    assert render(Relabel(3, 2, Create(3, "x"))) == "rho(3,2, create(3,x))"
    assert parse("# comment\n union( create(1,a) ,\n create(1,b))") == Union(Create(1, "a"), Create(1, "b"))


@pytest.mark.parametrize("text,line", [
    ("create(1,a", 1), ("create(x,a)", 1), ("union(create(1,a),\n  boom(1,b))", 2),
    ("create(1,a) extra", 1), ("union(create(1,a), create(2,a))", None), ("eta(1,1, create(1,a))", None),
    ("", 1), ("create(0,a)", None),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    if line is not None:
        assert info.value.line == line


def test_deep_expression_is_iterative():
    vs = [f"p{i}" for i in range(1, 3001)]
    e = path_expression(vs)
    assert size(e) > 10000
    assert evaluate(e).graph == path_graph(3000)
    assert parse(render(e)) == e


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_render_parse_round_trip(seed):
    e = random_expression(seed)
    assert parse(render(e)) == e


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_joins_are_idempotent(seed):
    e = random_expression(seed)
    lg = evaluate(e)
    again = evaluate(Join(1, 2, Join(1, 2, e)))
    once = evaluate(Join(1, 2, e))
    assert again.graph == once.graph
    assert set(map(frozenset, lg.graph.edges())) <= set(map(frozenset, once.graph.edges()))


def test_restrict_examples():
    p5 = parse(P5_TEXT)
    r = restrict(p5, "abc")
    assert evaluate(r).graph == Graph("abc", [("a", "b"), ("b", "c")]) and width(r) <= 3
    assert evaluate(restrict(p5, "abcde")).graph == evaluate(p5).graph
    col = [cell_id(i, 2) for i in (1, 2, 3)]
    r = restrict(h_expression(3, 3), col)
    assert evaluate(r).graph == Graph(col, zip(col, col[1:]))
    with pytest.raises(PreconditionError):
        restrict(p5, ["zz"])


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 255))
def test_restrict_matches_induced_subgraph(seed, mask):
    e = random_expression(seed)
    vs = created_vertices(e)
    keep = [v for i, v in enumerate(vs) if (mask >> i) & 1] or vs[:1]
    r = restrict(e, keep)
    assert evaluate(r).graph == induced_subgraph(evaluate(e).graph, keep)
    assert width(r) <= width(e)


def test_rename_and_map_labels():
    e = parse("eta(1,2, union(create(1,a), create(2,b)))")
    assert evaluate(rename_vertices(e, {"a": "x"})).graph == Graph("xb", [("x", "b")])
    assert labels_used(map_labels(e, lambda x: x + 5)) == {6, 7}
    assert union_all([Create(1, "a")]) == Create(1, "a")


def test_h_expression_via_columns():
    for s, t in [(1, 4), (3, 4), (5, 5)]:
        e = h_expression(s, t)
        assert evaluate(e).graph == generate_h(s, t)
        assert width(e) <= 3 * s


def test_compose_single_part_and_two_parts():
    g = path_graph(4)
    e = compose_partition(PartScheme(g, [frozenset(g.vertices)], [naive_expression(g)]))
    assert evaluate(e).graph == g
    g = random_uig(8, 3, 5)
    half = [frozenset(g.vertices[:4]), frozenset(g.vertices[4:])]
    report = []
    e = compose_partition(PartScheme(g, half, [naive_expression(induced_subgraph(g, p)) for p in half]),
                          report=report)
    assert evaluate(e).graph == g
    rep: CompositionReport = report[0]
    assert width(e) <= rep.k * rep.l


def test_compose_preconditions():
    g = path_graph(3)
    with pytest.raises(PreconditionError):
        compose_partition(PartScheme(g, [frozenset({"p1"})], [Create(1, "p1")]))
    with pytest.raises(PreconditionError):
        compose_partition(PartScheme(g, [frozenset(g.vertices)], [Create(1, "p1")]))
    with pytest.raises(PreconditionError):
        compose_partition(PartScheme(g, [frozenset(g.vertices)], [naive_expression(g)]), k=2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.floats(0.1, 0.9), st.integers(0, 10 ** 6), st.integers(1, 4))
def test_compose_random_general_graphs(n, p, seed, parts):
    g = random_graph(n, p, seed)
    rng = random.Random(seed)
    assign = {v: rng.randrange(parts) for v in g.vertices}
    blocks = [frozenset(v for v in g.vertices if assign[v] == i) for i in range(parts)]
    blocks = [b for b in blocks if b]
    report = []
    e = compose_partition(PartScheme(g, blocks, [naive_expression(induced_subgraph(g, b)) for b in blocks]),
                          report=report)
    assert evaluate(e).graph == g
    assert width(e) <= report[0].k * report[0].l
