"""Embedding unit interval graphs into the canonical graph H_{n,n}.

Layer Q_i of a connected graph goes to row i+1. Rows are built one at a
time: the current bottom row (real vertices plus padding cells) and the next
layer form a co-chain graph, whose H_{2,*} embedding fixes the columns of
both rows. Earlier rows only get new columns inserted between theirs, so
their relative placement never changes.
"""

from typing import Dict, List, Optional

from .canonical import CanonicalGraphSpec, CellEmbedding, Check, verify_embedding
from .cochain import check_cochain, embed_cochain
from .errors import VerificationError
from .graph import Graph, Vertex, connected_components, induced_subgraph
from .uig import CanonicalPartition, canonical_partition, normalized_orders

__all__ = ["embed_layered", "embed_universal", "verify_embedding"]


class _Pad:
    """A padding cell of the host that no graph vertex occupies."""

    __slots__ = ("row", "serial")

    def __init__(self, row, serial):
        self.row, self.serial = row, serial

    def __repr__(self):
        return f"pad{self.row}.{self.serial}"


def embed_layered(g: Graph, cp: Optional[CanonicalPartition] = None) -> CellEmbedding:
    """Embed a connected unit interval graph, layer i into row i+1.

    The result's target has one row per layer and |V(g)| columns.
    """
    if cp is None:
        cp = canonical_partition(g)
    orders = normalized_orders(g, cp)
    # row[r] lists the occupant of every column of row r+1, left to right
    rows: List[List] = [list(orders[0])]
    serial = 0
    for k in range(1, len(orders)):
        below = orders[k]
        below_set = frozenset(below)
        current = rows[-1]
        # padding cells copy the cross neighbourhood of the nearest real vertex on their left
        cross: Dict = {}
        reach = frozenset()
        for x in current:
            if not isinstance(x, _Pad):
                reach = g.neighbors(x) & below_set
            cross[x] = reach
        verts = list(current) + list(below)
        edges = [(a, b) for i, a in enumerate(current) for b in current[i + 1:]]
        edges += [(a, b) for i, a in enumerate(below) for b in below[i + 1:]]
        edges += [(x, w) for x in current for w in cross[x]]
        aux = Graph(verts, edges)
        cc = check_cochain(aux, current, below, order1=current, order2=below)
        sub = embed_cochain(cc)
        width = len(verts)
        if sub.target.m != len(current) + len(below):
            raise VerificationError("co-chain extension produced an unexpected column count")
        new_col = {x: sub.cells[x][1] for x in current}
        cols = [new_col[x] for x in current]
        if cols != sorted(cols):
            raise VerificationError("co-chain extension reordered an existing row")
        remapped = []
        for row in rows:
            fresh: List = [None] * width
            for old, x in enumerate(row):
                fresh[new_col[current[old]] - 1] = x
            remapped.append(fresh)
        last: List = [None] * width
        for w in below:
            last[sub.cells[w][1] - 1] = w
        remapped.append(last)
        for r, row in enumerate(remapped):
            for c in range(width):
                if row[c] is None:
                    serial += 1
                    row[c] = _Pad(r + 1, serial)
        rows = remapped
    cells = {}
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            if not isinstance(x, _Pad):
                cells[x] = (r + 1, c + 1)
    return CellEmbedding(CanonicalGraphSpec(len(rows), len(rows[0])), cells)


def embed_universal(g: Graph) -> CellEmbedding:
    """Embed any unit interval graph on n vertices into H_{n,n}.

    Components are taken by decreasing size (ties by first vertex) and placed
    block-diagonally: each one occupies fresh rows and fresh columns to the
    lower right of the previous blocks, so no edges arise between them.
    """
    n = len(g)
    if n == 0:
        return CellEmbedding(CanonicalGraphSpec(1, 1), {})
    comps = sorted(connected_components(g), key=lambda c: (-len(c), min(g.index(v) for v in c)))
    cells = {}
    shift = 0
    for comp in comps:
        sub = induced_subgraph(g, comp)
        emb = embed_layered(sub)
        for v, (r, c) in emb.cells.items():
            cells[v] = (r + shift, c + shift)
        shift += len(comp)
    emb = CellEmbedding(CanonicalGraphSpec(n, n), {v: cells[v] for v in g.vertices})
    check = verify_embedding(g, emb)
    if not check:
        raise VerificationError(f"universal embedding failed: {check.violation}")
    return emb
