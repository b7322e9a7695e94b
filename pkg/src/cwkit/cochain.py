"""Co-chain graphs: two cliques whose cross neighbourhoods are nested.

``part1`` is kept in increasing order of cross neighbourhood and ``part2``
in decreasing order, which is the orientation of two consecutive rows of
H_{2,m} (upper row first).
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .canonical import CanonicalGraphSpec, CellEmbedding
from .errors import PreconditionError
from .graph import Graph, Vertex


class CoChainError(PreconditionError):
    """Not a co-chain graph; ``witness`` holds the offending vertices."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class CoChain:
    host: Graph
    part1: List[Vertex]
    part2: List[Vertex]

    def cross1(self, v) -> FrozenSet[Vertex]:
        return self.host.neighbors(v) & frozenset(self.part2)

    def cross2(self, v) -> FrozenSet[Vertex]:
        return self.host.neighbors(v) & frozenset(self.part1)


@dataclass
class Cluster:
    upper: Tuple[Vertex, ...]  # members from part1
    lower: Tuple[Vertex, ...]  # members from part2

    @property
    def members(self) -> FrozenSet[Vertex]:
        return frozenset(self.upper) | frozenset(self.lower)


@dataclass
class ClusterPartition:
    clusters: List[Cluster]
    trivial1: Tuple[Vertex, ...] = ()
    trivial2: Tuple[Vertex, ...] = ()

    @property
    def m(self) -> int:
        return len(self.clusters)


def _check_clique(g: Graph, part: Sequence[Vertex], name: str):
    for u, v in combinations(part, 2):
        if not g.has_edge(u, v):
            raise CoChainError(f"{name} is not a clique: {u} and {v} are non-adjacent", (u, v))


def _chain_witness(g: Graph, ordered: Sequence[Vertex], other: FrozenSet[Vertex]):
    """First adjacent pair of ``ordered`` whose cross neighbourhoods are not nested upward."""
    for x1, x2 in zip(ordered, ordered[1:]):
        n1, n2 = g.neighbors(x1) & other, g.neighbors(x2) & other
        if not n1 <= n2:
            y1 = g.sort(n1 - n2)[0]
            y2 = g.sort(n2 - n1)[0] if n2 - n1 else None
            return x1, x2, y1, y2
    return None


def check_cochain(g: Graph, p1, p2, order1: Optional[Sequence[Vertex]] = None,
                  order2: Optional[Sequence[Vertex]] = None) -> CoChain:
    """Validate that ``p1``/``p2`` split ``g`` into two cliques with nested cross neighbourhoods.

    Without explicit orders, ties between equal neighbourhoods are broken by
    declaration order. Explicit ``order1``/``order2`` are checked and kept.
    On a chain violation the error's witness is (x1, x2, y1, y2) with
    x1y1, x2y2 edges and x1y2, x2y1 non-edges: an induced 4-cycle, i.e. a
    2K_2 in the complement.
    """
    s1, s2 = frozenset(p1), frozenset(p2)
    if s1 & s2 or (s1 | s2) != set(g.vertices):
        raise PreconditionError("parts must partition the vertex set")
    _check_clique(g, g.sort(s1), "part 1")
    _check_clique(g, g.sort(s2), "part 2")
    if order1 is None:
        order1 = sorted(s1, key=lambda v: (len(g.neighbors(v) & s2), g.index(v)))
    if order2 is None:
        order2 = sorted(s2, key=lambda v: (-len(g.neighbors(v) & s1), g.index(v)))
    if set(order1) != s1 or set(order2) != s2:
        raise PreconditionError("orders must list exactly the parts")
    witness = _chain_witness(g, list(order1), s2)
    if witness is not None:
        x1, x2, y1, y2 = witness
        if y2 is None:
            raise CoChainError(f"order of part 1 is not increasing at {x1}, {x2}", witness)
        raise CoChainError(f"cross neighbourhoods of {x1} and {x2} are incomparable", (x1, x2, y1, y2))
    witness = _chain_witness(g, list(reversed(order2)), s1)
    if witness is not None:
        raise CoChainError(f"order of part 2 is not decreasing at {witness[1]}, {witness[0]}", witness)
    return CoChain(g, list(order1), list(order2))


def clusters(cc: CoChain) -> ClusterPartition:
    """Cluster partition relative to a maximum induced H_{2,m}.

    Column j of a maximum H_{2,m} pairs the j-th smallest nonempty cross
    neighbourhood class of part 1 with the j-th largest of part 2.
    """
    s1, s2 = frozenset(cc.part1), frozenset(cc.part2)
    g = cc.host
    trivial1 = tuple(v for v in cc.part1 if not g.neighbors(v) & s2)
    trivial2 = tuple(v for v in cc.part2 if not g.neighbors(v) & s1)
    groups1: List[List[Vertex]] = []
    last = None
    for v in cc.part1:
        nb = g.neighbors(v) & s2
        if not nb:
            continue
        if nb != last:
            groups1.append([])
            last = nb
        groups1[-1].append(v)
    groups2: List[List[Vertex]] = []
    last = None
    for v in cc.part2:
        nb = g.neighbors(v) & s1
        if not nb:
            continue
        if nb != last:
            groups2.append([])
            last = nb
        groups2[-1].append(v)
    if len(groups1) != len(groups2):
        raise AssertionError("chain graph with unequal class counts")
    out = [Cluster(tuple(a), tuple(b)) for a, b in zip(groups1, groups2)]
    return ClusterPartition(out, trivial1, trivial2)


def embed_cochain(cc: CoChain) -> CellEmbedding:
    """Place the co-chain graph on rows 1 and 2 of H_{2,n}, n = |V|.

    Part 1 goes to row 1 and part 2 to row 2, both in their given order.
    Columns are handed out left to right: trivial part-1 vertices first, then
    per cluster j a padding cell over each lower member followed by the upper
    members over padding cells, and finally the trivial part-2 vertices.
    The padding cells are the new vertices that complete the host to H_{2,n}.
    """
    cp = clusters(cc)
    cells = {}
    col = 0
    for v in cp.trivial1:
        col += 1
        cells[v] = (1, col)
    for cl in cp.clusters:
        for v in cl.lower:
            col += 1
            cells[v] = (2, col)
        for v in cl.upper:
            col += 1
            cells[v] = (1, col)
    for v in cp.trivial2:
        col += 1
        cells[v] = (2, col)
    n = len(cc.host)
    assert col == n
    return CellEmbedding(CanonicalGraphSpec(2, max(n, 1)), cells)
