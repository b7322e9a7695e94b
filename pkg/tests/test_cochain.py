import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from cwkit.canonical import generate_h, verify_embedding
from cwkit.cochain import CoChainError, check_cochain, clusters, embed_cochain
from cwkit.graph import Graph, find_induced_copy, induced_subgraph


def two_cliques(n1, n2, p, seed):
    rng = random.Random(seed)
    a = [f"a{i}" for i in range(n1)]
    b = [f"b{i}" for i in range(n2)]
    edges = list(combinations(a, 2)) + list(combinations(b, 2))
    edges += [(x, y) for x in a for y in b if rng.random() < p]
    return Graph(a + b, edges), a, b


def nested_cross(n1, n2, seed):
    """Two cliques whose cross neighbourhoods are thresholds, hence nested."""
    rng = random.Random(seed)
    a = [f"a{i}" for i in range(n1)]
    b = [f"b{i}" for i in range(n2)]
    reach = sorted(rng.randint(0, n2) for _ in a)
    edges = list(combinations(a, 2)) + list(combinations(b, 2))
    edges += [(x, b[j]) for x, r in zip(a, reach) for j in range(n2 - r, n2)]
    order = list(range(n1 + n2))
    rng.shuffle(order)
    verts = [(a + b)[i] for i in order]
    return Graph(verts, edges), a, b


def has_cross_2k2(g, a, b):
    for x1, x2 in combinations(a, 2):
        for y1 in b:
            for y2 in b:
                if y1 != y2 and g.has_edge(x1, y1) and g.has_edge(x2, y2) \
                        and not g.has_edge(x1, y2) and not g.has_edge(x2, y1):
                    return True
    return False


def largest_h2m(g, a, b):
    """Largest m with row 1 of an induced H_{2,m} in ``a`` and row 2 in ``b``, by enumeration."""
    best = 0
    for m in range(1, min(len(a), len(b)) + 1):
        for xs in permutations(a, m):
            if any(all(g.has_edge(xs[i], ys[j]) == (j <= i) for i in range(m) for j in range(m))
                   for ys in permutations(b, m)):
                best = m
                break
    return best


def test_h22_rows():
    h = generate_h(2, 2)
    cc = check_cochain(h, ["v1_1", "v1_2"], ["v2_1", "v2_2"])
    assert cc.part1 == ["v1_1", "v1_2"] and cc.part2 == ["v2_1", "v2_2"]
    part = clusters(cc)
    assert [c.members for c in part.clusters] == [frozenset({"v1_1", "v2_1"}), frozenset({"v1_2", "v2_2"})]
    assert not part.trivial1 and not part.trivial2


def test_k2_split():
    g = Graph("ab", [("a", "b")])
    part = clusters(check_cochain(g, ["a"], ["b"]))
    assert part.m == 1 and part.clusters[0].members == {"a", "b"}


def test_trivial_vertex():
    g = Graph("abc", [("a", "b"), ("b", "c")])
    part = clusters(check_cochain(g, ["a", "b"], ["c"]))
    assert part.trivial1 == ("a",) and part.m == 1


def test_chain_violation_has_witness():
    g = Graph("abcd", [("a", "b"), ("c", "d"), ("a", "c"), ("b", "d")])
    with pytest.raises(CoChainError) as info:
        check_cochain(g, ["a", "b"], ["c", "d"])
    x1, x2, y1, y2 = info.value.witness
    assert g.has_edge(x1, y1) and g.has_edge(x2, y2)
    assert not g.has_edge(x1, y2) and not g.has_edge(x2, y1)


def test_parts_must_be_cliques():
    with pytest.raises(CoChainError):
        check_cochain(Graph("abc", [("a", "c")]), ["a", "b"], ["c"])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_recognition_matches_2k2_search(n1, n2, p, seed):
    g, a, b = two_cliques(n1, n2, p, seed)
    try:
        check_cochain(g, a, b)
        accepted = True
    except CoChainError:
        accepted = False
    assert accepted == (not has_cross_2k2(g, a, b))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_clusters_match_largest_h2m(n1, n2, seed):
    g, a, b = nested_cross(n1, n2, seed)
    part = clusters(check_cochain(g, a, b))
    for cl in part.clusters:
        assert all(g.has_edge(u, v) for u, v in combinations(cl.members, 2))
        assert len({g.neighbors(v) & set(b) for v in cl.upper}) == 1
        assert len({g.neighbors(v) & set(a) for v in cl.lower}) == 1
    assert largest_h2m(g, a, b) == part.m


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 10 ** 6))
def test_embedding_is_induced(n1, n2, seed):
    g, a, b = nested_cross(n1, n2, seed)
    emb = embed_cochain(check_cochain(g, a, b))
    assert emb.target.n == 2 and emb.target.m == len(g)
    assert verify_embedding(g, emb)


def test_embed_single_vertex_and_h22():
    g = Graph("a")
    emb = embed_cochain(check_cochain(g, ["a"], []))
    assert (emb.target.n, emb.target.m) == (2, 1) and verify_embedding(g, emb)
    h = generate_h(2, 2)
    emb = embed_cochain(check_cochain(h, ["v1_1", "v1_2"], ["v2_1", "v2_2"]))
    assert verify_embedding(h, emb) and emb.target.m <= 4
