import pytest
from hypothesis import given, settings

from cwkit.canonical import CanonicalGraphSpec, CellEmbedding, generate_h, row_layers, verify_embedding
from cwkit.embedding import embed_layered, embed_universal
from cwkit.errors import NotUnitIntervalError
from cwkit.graph import Graph, complete_graph, path_graph
from cwkit.uig import CanonicalPartition, canonical_partition

from conftest import uig_strategy


def test_k3_in_row_cells():
    k3 = complete_graph(3)
    rows = CellEmbedding(CanonicalGraphSpec(3, 3), {"k1": (1, 1), "k2": (1, 2), "k3": (1, 3)})
    assert verify_embedding(k3, rows)
    assert verify_embedding(k3, embed_universal(k3))


def test_p3_column_and_row():
    p3 = path_graph(3)
    col = CellEmbedding(CanonicalGraphSpec(3, 3), {"p1": (1, 1), "p2": (2, 1), "p3": (3, 1)})
    assert verify_embedding(p3, col)
    row = CellEmbedding(CanonicalGraphSpec(3, 3), {"p1": (1, 1), "p2": (1, 2), "p3": (1, 3)})
    check = verify_embedding(p3, row)
    assert not check and "non-adjacent" in check.violation
    emb = embed_universal(p3)
    assert verify_embedding(p3, emb) and (emb.target.n, emb.target.m) == (3, 3)


def test_two_isolated_vertices_block_diagonal():
    g = Graph("ab")
    emb = embed_universal(g)
    assert emb.cells == {"a": (1, 1), "b": (2, 2)}
    assert (emb.target.n, emb.target.m) == (2, 2)


def test_verify_rejects_malformed():
    g = path_graph(2)
    assert not verify_embedding(g, CellEmbedding(CanonicalGraphSpec(2, 2), {"p1": (1, 1)}))
    assert not verify_embedding(g, CellEmbedding(CanonicalGraphSpec(2, 2), {"p1": (1, 1), "p2": (1, 1)}))
    assert not verify_embedding(g, CellEmbedding(CanonicalGraphSpec(2, 2), {"p1": (1, 1), "p2": (3, 1)}))


def test_not_unit_interval():
    with pytest.raises(NotUnitIntervalError):
        embed_universal(Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d")]))


def test_h_into_itself_by_rows():
    h = generate_h(3, 4)
    emb = embed_layered(h, CanonicalPartition(row_layers(3, 4)))
    assert verify_embedding(h, emb)
    assert all(emb.cells[v][0] == int(v[1]) for v in h.vertices)


@settings(max_examples=150, deadline=None)
@given(uig_strategy(16))
def test_universal_embedding(g):
    emb = embed_universal(g)
    assert (emb.target.n, emb.target.m) == (len(g), len(g))
    assert verify_embedding(g, emb)


@settings(max_examples=100, deadline=None)
@given(uig_strategy(16))
def test_layers_go_to_rows_and_rows_keep_their_order(g):
    from cwkit.graph import connected_components, induced_subgraph
    comp = max(connected_components(g), key=len)
    sub = induced_subgraph(g, comp)
    cp = canonical_partition(sub)
    emb = embed_layered(sub, cp)
    for j, q in enumerate(cp.order_in_layer):
        assert {emb.cells[v][0] for v in q} == {j + 1}
    # adding the last layer only inserts columns: earlier rows keep their relative order
    if len(cp) > 2:
        head = CanonicalPartition(cp.order_in_layer[:-1])
        smaller = embed_layered(induced_subgraph(sub, [v for q in head.order_in_layer for v in q]), head)
        for q in head.order_in_layer:
            before = sorted(q, key=lambda v: smaller.cells[v][1])
            after = sorted(q, key=lambda v: emb.cells[v][1])
            assert before == after
