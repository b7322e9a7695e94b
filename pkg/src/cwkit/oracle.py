"""Exhaustive reference oracles for small graphs.

Both are deliberately independent of the constructive machinery: the
clique-width oracle searches labeled-partition states, the interval oracle
searches vertex orderings and solves the resulting difference constraints.
"""

import os
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import SizeCapError
from .graph import Graph, Vertex

DEFAULT_ORACLE_CAP = 6
MODEL_ORACLE_CAP = 10


def oracle_cap() -> int:
    return int(os.environ.get("CWKIT_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def oracle_cliquewidth(g: Graph, cap: Optional[int] = None) -> int:
    """Exact clique-width by exhaustive search, for graphs up to ``cap`` vertices.

    A state is a vertex set U together with its partition into label
    classes, where the subterm built so far is exactly G[U] and vertices
    sharing a label have the same neighbourhood outside U. Every expression
    can be normalised to pass only through such states (joins can always be
    applied right after the union that brings their endpoints together).
    """
    cap = oracle_cap() if cap is None else cap
    n = len(g)
    if n > cap:
        raise SizeCapError(f"oracle limited to {cap} vertices (got {n}); set CWKIT_ORACLE_CAP to raise it")
    if n == 0:
        return 0
    idx = {v: i for i, v in enumerate(g.vertices)}
    nbr = [0] * n
    for u, v in g.edges():
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    for k in range(1, n + 1):
        if _buildable(n, nbr, k):
            return k
    raise AssertionError("unreachable: n labels always suffice")


def _members(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _similar(block, U, nbr):
    outside = ~U
    sig = None
    for v in _members(block):
        s = nbr[v] & outside
        if sig is None:
            sig = s
        elif s != sig:
            return False
    return True


def _complete(a, b, nbr):
    return all((nbr[v] & b) == b for v in _members(a))


def _no_edges(a, b, nbr):
    return all((nbr[v] & b) == 0 for v in _members(a))


def _buildable(n, nbr, k) -> bool:
    full = (1 << n) - 1
    seen = set()
    by_u: Dict[int, List[tuple]] = {}
    work = []

    def add(U, blocks):
        state = (U, tuple(sorted(blocks)))
        if state in seen:
            return False
        seen.add(state)
        by_u.setdefault(U, []).append(state[1])
        work.append(state)
        return U == full

    for v in range(n):
        if add(1 << v, [1 << v]):
            return True
    while work:
        U, blocks = work.pop()
        # relabel: merge two classes
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                merged = blocks[i] | blocks[j]
                if _similar(merged, U, nbr):
                    rest = [b for t, b in enumerate(blocks) if t not in (i, j)] + [merged]
                    if add(U, rest):
                        return True
        # union with every compatible state seen so far
        for U2, partitions in list(by_u.items()):
            if U2 & U:
                continue
            W = U | U2
            for blocks2 in list(partitions):
                for result in _unions(blocks, blocks2, W, nbr, k):
                    if add(W, result):
                        return True
    return False


def _unions(b1, b2, W, nbr, k):
    """All ways to unite two states, optionally sharing labels across sides."""
    out = []

    def rec(i, used2, pairs):
        if i == len(b1):
            merged = []
            for a, j in pairs:
                merged.append((a, b2[j]) if j is not None else (a, 0))
            for j, b in enumerate(b2):
                if j not in used2:
                    merged.append((0, b))
            if len(merged) > k:
                return
            labels = [x | y for x, y in merged]
            for x, y in merged:
                if x and y and (not _no_edges(x, y, nbr) or not _similar(x | y, W, nbr)):
                    return
            for s in range(len(merged)):
                for t in range(s + 1, len(merged)):
                    (x1, y1), (x2, y2) = merged[s], merged[t]
                    if _complete(labels[s], labels[t], nbr):
                        continue
                    if not (_no_edges(x1, y2, nbr) and _no_edges(y1, x2, nbr)):
                        return
            out.append(labels)
            return
        rec(i + 1, used2, pairs + [(b1[i], None)])
        for j in range(len(b2)):
            if j not in used2:
                rec(i + 1, used2 | {j}, pairs + [(b1[i], j)])

    rec(0, frozenset(), [])
    return out


# -- unit interval membership --------------------------------------------------

def unit_interval_model_oracle(g: Graph, cap: int = MODEL_ORACLE_CAP) -> Optional[Dict[Vertex, Fraction]]:
    """Search left-endpoint orderings for a unit interval model of ``g``.

    Returns rational left endpoints (adjacency iff |l(u) - l(v)| < 1) or None.
    Orderings are pruned by the necessary condition that, in left-endpoint
    order, an edge from position i to position k forces both edges through
    any j in between; each surviving ordering is then checked exactly by a
    difference-constraint system with an infinitesimal margin.
    """
    n = len(g)
    if n > cap:
        raise SizeCapError(f"model oracle limited to {cap} vertices")
    if n == 0:
        return {}
    verts = list(g.vertices)
    order: List[Vertex] = []
    placed = set()

    def extend():
        if len(order) == n:
            return _solve_order(g, order)
        for w in verts:
            if w in placed:
                continue
            ok = True
            for i in range(len(order)):
                if g.has_edge(order[i], w):
                    for j in range(i + 1, len(order)):
                        if not (g.has_edge(order[i], order[j]) and g.has_edge(order[j], w)):
                            ok = False
                            break
                if not ok:
                    break
            if not ok:
                continue
            order.append(w)
            placed.add(w)
            found = extend()
            order.pop()
            placed.discard(w)
            if found is not None:
                return found
        return None

    return extend()


def _solve_order(g: Graph, order: List[Vertex]) -> Optional[Dict[Vertex, Fraction]]:
    n = len(order)
    # constraint x[v] - x[u] <= (a + b*eps) stored as arcs u -> v
    arcs = []
    for i in range(n - 1):
        arcs.append((i + 1, i, (0, 0)))
    for i in range(n):
        for j in range(i + 1, n):
            if g.has_edge(order[i], order[j]):
                arcs.append((i, j, (1, -1)))
            else:
                arcs.append((j, i, (-1, 0)))
    dist = [(0, 0)] * n
    for _ in range(n + 1):
        changed = False
        for u, v, (a, b) in arcs:
            cand = (dist[u][0] + a, dist[u][1] + b)
            if cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    else:
        return None
    eps = Fraction(1, 4 * n + 4)
    model = {order[i]: dist[i][0] + dist[i][1] * eps for i in range(n)}
    shift = min(model.values())
    model = {v: x - shift for v, x in model.items()}
    for i in range(n):
        for j in range(i + 1, n):
            u, v = order[i], order[j]
            if (abs(model[u] - model[v]) < 1) != g.has_edge(u, v):
                return None
    return model
