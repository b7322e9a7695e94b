import pytest
from hypothesis import given, settings

from cwkit.canonical import generate_h, row_layers
from cwkit.decomposition import (SynthesisReport, augment_trivial, build_BG, clique_number,
                                 collapse_twins, decompose, expand_twins, forbidden_to_k,
                                 free_corpus, is_hkk_free, max_disjoint_paths, min_separator,
                                 mu_bound, part_expression, random_sparse_uig, split_window,
                                 synthesize, width_bound)
from cwkit.cochain import check_cochain, clusters
from cwkit.errors import NotUnitIntervalError, PreconditionError
from cwkit.expr import evaluate, width
from cwkit.graph import Graph, complete_graph, induced_subgraph, mu, path_graph
from cwkit.uig import CanonicalPartition, canonical_partition, is_unit_interval, random_uig

from conftest import uig_strategy


def test_bounds():
    assert mu_bound(3) == 21 and mu_bound(4) == 44
    assert width_bound(2) == 96 + 96 + 288 - 72
    assert width_bound(3) == 960


def test_twins_of_k3():
    g, tm = collapse_twins(complete_graph(3))
    assert len(g) == 1
    assert sorted(len(ms) for ms in tm.classes.values()) == [3]
    e = synthesize(complete_graph(3), 2)
    assert evaluate(e).graph == complete_graph(3)
    assert width(e) <= 2


def test_p4_has_no_twins_and_expand_round_trip():
    g, tm = collapse_twins(path_graph(4))
    assert g == path_graph(4) and tm.is_identity()
    h = generate_h(3, 3)
    small, tm = collapse_twins(h)
    e = part_expression(small, frozenset(small.vertices), canonical_partition(small))
    assert evaluate(expand_twins(e, tm)).graph == h


def test_augment_trivial():
    for seed in range(40):
        g = random_uig(12, 5, seed)
        if not is_unit_interval(g) or len(g) < 2:
            continue
        from cwkit.graph import connected_components
        comp = max(connected_components(g), key=len)
        sub = induced_subgraph(g, comp)
        cp = canonical_partition(sub)
        g2, cp2, added = augment_trivial(sub, cp)
        assert induced_subgraph(g2, sub.vertices) == sub
        per_layer = {}
        for _, j in added:
            per_layer[j] = per_layer.get(j, 0) + 1
        assert all(c <= 2 for c in per_layer.values())
        build_BG(g2, cp2)  # raises on a trivial cluster


@pytest.mark.parametrize("n,m", [(2, 2), (3, 4), (5, 3), (8, 8)])
def test_bg_of_h(n, m):
    h = generate_h(n, m)
    bg = build_BG(h, CanonicalPartition(row_layers(n, m)))
    assert len(bg.levels) == n - 1
    assert len(bg.components()) == m
    assert all(len(c) == n - 1 for c in bg.components())
    paths = max_disjoint_paths(bg)
    assert len(paths) == m
    assert len(min_separator(bg, paths)) == m


def test_h1m_has_no_levels():
    bg = build_BG(generate_h(1, 4), CanonicalPartition(row_layers(1, 4)))
    assert bg.levels == []


def test_trivial_cluster_needs_permission():
    g = Graph(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")])
    with pytest.raises(PreconditionError):
        build_BG(g, CanonicalPartition([["a"], ["b", "c"], ["d"]]))
    build_BG(g, CanonicalPartition([["a"], ["b", "c"], ["d"]]), allow_trivial=True)


def test_flow_equals_cut_on_corpus():
    for g in free_corpus(3, 25, 11, max_n=30):
        small, _ = collapse_twins(g)
        from cwkit.graph import connected_components
        for comp in connected_components(small):
            sub = induced_subgraph(small, comp)
            cp = canonical_partition(sub)
            if len(cp) < 3:
                continue
            bg = build_BG(sub, cp, allow_trivial=True)
            paths = max_disjoint_paths(bg, 1, len(bg.levels))
            cut = min_separator(bg, paths, 1, len(bg.levels))
            assert len(cut) == len(paths)


def test_split_window_properties():
    for g in free_corpus(3, 30, 5, max_n=40):
        small, _ = collapse_twins(g)
        from cwkit.graph import connected_components
        for comp in connected_components(small):
            sub = induced_subgraph(small, comp)
            cp = canonical_partition(sub)
            for start in range(len(cp) - 2):
                sp = split_window(sub, cp, start, 3)
                assert sp.x_side | sp.y_side == frozenset(sp.window.vertices)
                assert not sp.x_side & sp.y_side
                assert not sp.x_side & set(sp.layering.order_in_layer[-1])
                assert len(sp.paths) <= 2
                assert max(sp.mu_x, sp.mu_y) <= mu_bound(3)


def test_decompose_short_graph_is_one_part():
    # BFS from a corner of H_{3,5} gives 4 layers, so k=5 is the first single-part case
    g = generate_h(3, 5)
    assert len(canonical_partition(g)) == 4
    assert decompose(g, 5).parts == [frozenset(g.vertices)]
    assert len(decompose(g, 4).parts) > 1
    assert decompose(path_graph(3), 4).parts == [frozenset(path_graph(3).vertices)]


def test_decompose_covers_and_respects_mu():
    for k in (3, 4):
        for g in free_corpus(k, 20, k, max_n=50):
            small, _ = collapse_twins(g)
            from cwkit.graph import connected_components
            for comp in connected_components(small):
                sub = induced_subgraph(small, comp)
                if len(sub) < 2:
                    continue
                dec = decompose(sub, k)
                seen = set()
                for p in dec.parts:
                    assert p and not p & seen
                    seen |= p
                    assert mu(sub, seen) <= mu_bound(k)
                assert seen == set(sub.vertices)


def test_synthesize_cliques_and_paths():
    for n in range(1, 8):
        e = synthesize(complete_graph(n), 2)
        assert evaluate(e).graph == complete_graph(n) and width(e) <= 3
    for n in range(1, 30):
        e = synthesize(path_graph(n), 2)
        assert evaluate(e).graph == path_graph(n)
        assert width(e) <= width_bound(2)


def test_synthesize_report_and_rejects():
    rep = SynthesisReport(0, 0)
    g = random_sparse_uig(40, 3, 2)
    synthesize(g, 3, report=rep)
    assert rep.n == 40 and rep.width <= rep.bound == width_bound(3)
    with pytest.raises(NotUnitIntervalError):
        synthesize(Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d")]), 3)
    with pytest.raises(PreconditionError):
        synthesize(path_graph(3), 1)


def test_forbidden_to_k():
    assert forbidden_to_k(path_graph(4)) == 4
    assert forbidden_to_k(complete_graph(3)) == 3
    assert forbidden_to_k(generate_h(2, 2)) == 4
    with pytest.raises(NotUnitIntervalError):
        forbidden_to_k(Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d")]))


def test_corpus_is_free_and_sparse_has_small_cliques():
    for g in free_corpus(3, 40, 1, max_n=40):
        assert is_unit_interval(g)
        assert is_hkk_free(g, 3) is not False
    for seed in range(20):
        assert clique_number(random_sparse_uig(30, 3, seed)) <= 3


@settings(max_examples=60, deadline=None)
@given(uig_strategy(14))
def test_synthesize_any_free_graph(g):
    if is_hkk_free(g, 3):
        e = synthesize(g, 3)
        assert evaluate(e).graph == g
        assert width(e) <= width_bound(3)
