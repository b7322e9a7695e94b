"""Unit interval graphs: canonical partitions, interval models, generators.

A canonical partition splits a connected unit interval graph into clique
layers Q_0..Q_t where

(a) non-consecutive layers have no edges between them,
(b) consecutive layers induce co-chain graphs G_1..G_t,
(c) every inner layer has an order that is decreasing in the co-chain graph
    above it and increasing in the one below it.

Interval models are rational left endpoints; all intervals have length 1
and are open, so u ~ v iff |l(u) - l(v)| < 1.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from .canonical import Check, cell_id, generate_h
from .cochain import CoChainError, check_cochain
from .errors import NotUnitIntervalError, ParseError, PreconditionError, VerificationError
from .expr import CwExpr, PartScheme, compose_partition, path_expression, width
from .graph import Graph, Vertex, bfs_distances, connected_components, induced_subgraph


@dataclass
class CanonicalPartition:
    """Ordered layers; each layer is listed in its condition-(c) order."""

    order_in_layer: List[List[Vertex]]

    @property
    def layers(self) -> List[FrozenSet[Vertex]]:
        return [frozenset(q) for q in self.order_in_layer]

    def __len__(self):
        return len(self.order_in_layer)

    def layer_index(self) -> Dict[Vertex, int]:
        return {v: j for j, q in enumerate(self.order_in_layer) for v in q}


@dataclass
class IntervalModel:
    left: Dict[Vertex, Fraction]


# -- recognition ---------------------------------------------------------------

def _order_layers(g: Graph, layers: List[List[Vertex]]) -> List[List[Vertex]]:
    sets = [frozenset(q) for q in layers]
    out = []
    for j, q in enumerate(layers):
        prev = sets[j - 1] if j > 0 else frozenset()
        nxt = sets[j + 1] if j + 1 < len(sets) else frozenset()
        out.append(sorted(q, key=lambda v: (-len(g.neighbors(v) & prev), len(g.neighbors(v) & nxt), g.index(v))))
    return out


def verify_canonical(g: Graph, cp: CanonicalPartition) -> Check:
    """Check cliques, (a), (b) and (c) literally; the first violation is reported."""
    layers = cp.order_in_layer
    seen = set()
    for q in layers:
        if not q:
            return Check(False, "empty layer")
        for v in q:
            if v not in g:
                raise PreconditionError(f"unknown vertex {v!r} in partition")
            if v in seen:
                raise PreconditionError(f"vertex {v!r} appears in two layers")
            seen.add(v)
    if seen != set(g.vertices):
        raise PreconditionError("partition does not cover the graph")
    where = cp.layer_index()
    for j, q in enumerate(layers):
        for u, v in combinations(q, 2):
            if not g.has_edge(u, v):
                return Check(False, f"layer {j} is not a clique: {u}, {v} non-adjacent")
    for u, v in g.edges():
        if abs(where[u] - where[v]) > 1:
            return Check(False, f"(a) edge {u}-{v} joins layers {where[u]} and {where[v]}")
    sets = cp.layers
    for j in range(1, len(layers)):
        sub = induced_subgraph(g, sets[j - 1] | sets[j])
        try:
            check_cochain(sub, sets[j - 1], sets[j])
        except CoChainError as exc:
            return Check(False, f"(b) layers {j - 1},{j}: {exc}")
    for j in range(1, len(layers) - 1):
        order = layers[j]
        above = [g.neighbors(v) & sets[j - 1] for v in order]
        below = [g.neighbors(v) & sets[j + 1] for v in order]
        for i in range(len(order) - 1):
            if not above[i + 1] <= above[i]:
                return Check(False, f"(c) order of layer {j} not decreasing towards layer {j - 1} at {order[i]}, {order[i + 1]}")
            if not below[i] <= below[i + 1]:
                return Check(False, f"(c) order of layer {j} not increasing towards layer {j + 1} at {order[i]}, {order[i + 1]}")
    return Check(True)


def canonical_partition(g: Graph, starts: Optional[Iterable[Vertex]] = None) -> CanonicalPartition:
    """Layer a connected graph by BFS distance from a suitable start vertex.

    Start vertices are tried in order (declaration order by default); the
    first layering passing every condition wins. Raises NotUnitIntervalError
    carrying the violation seen from the first start when all fail.
    """
    if len(g) == 0:
        return CanonicalPartition([])
    if len(connected_components(g)) > 1:
        raise PreconditionError("canonical partition needs a connected graph")
    first_failure = None
    for p0 in (g.vertices if starts is None else starts):
        dist = bfs_distances(g, p0)
        layers: List[List[Vertex]] = [[] for _ in range(max(dist.values()) + 1)]
        for v in g.vertices:
            layers[dist[v]].append(v)
        cp = CanonicalPartition(_order_layers(g, layers))
        check = verify_canonical(g, cp)
        if check:
            return cp
        if first_failure is None:
            first_failure = (p0, check.violation)
    p0, why = first_failure
    raise NotUnitIntervalError(f"not a unit interval graph (from {p0}: {why})", witness=first_failure)


def component_partitions(g: Graph) -> List[CanonicalPartition]:
    """One canonical partition per connected component, components in vertex order."""
    return [canonical_partition(induced_subgraph(g, comp)) for comp in connected_components(g)]


def is_unit_interval(g: Graph) -> bool:
    try:
        component_partitions(g)
    except NotUnitIntervalError:
        return False
    return True


# -- interval models -----------------------------------------------------------

def normalized_orders(g: Graph, cp: CanonicalPartition) -> List[List[Vertex]]:
    """Layer orders with the marginal layers also sorted to agree with their single co-chain graph."""
    orders = [list(q) for q in cp.order_in_layer]
    sets = cp.layers
    if len(orders) > 1:
        orders[0].sort(key=lambda v: len(g.neighbors(v) & sets[1]))
        orders[-1].sort(key=lambda v: -len(g.neighbors(v) & sets[-2]))
    return orders


def layer_offsets(g: Graph, cp: CanonicalPartition) -> Dict[Vertex, Fraction]:
    """Fractional positions in (0, 1), increasing along each layer order.

    For consecutive layers, a vertex u of the lower layer is adjacent to v of
    the upper one exactly when offset(u) < offset(v). Each vertex whose
    neighbours above start at the s-th vertex of the previous layer is put
    strictly between the offsets of the (s-1)-th and s-th of them.
    """
    orders = normalized_orders(g, cp)
    offsets: Dict[Vertex, Fraction] = {}
    if not orders:
        return offsets
    q0 = orders[0]
    for i, v in enumerate(q0):
        offsets[v] = Fraction(i + 1, len(q0) + 1)
    for j in range(1, len(orders)):
        prev = orders[j - 1]
        bounds = [Fraction(0)] + [offsets[v] for v in prev] + [Fraction(1)]
        pos = {v: i for i, v in enumerate(prev)}
        groups: Dict[int, List[Vertex]] = {}
        last_s = 0
        for u in orders[j]:
            up = [pos[w] for w in g.neighbors(u) if w in pos]
            s = min(up) + 1 if up else len(prev) + 1
            if up and sorted(up) != list(range(s - 1, len(prev))):
                raise VerificationError(f"neighbours of {u} in layer {j - 1} are not a suffix of its order")
            if s < last_s:
                raise VerificationError(f"order of layer {j} is not decreasing towards layer {j - 1}")
            last_s = s
            groups.setdefault(s, []).append(u)
        for s, members in groups.items():
            lo, hi = bounds[s - 1], bounds[s]
            for r, u in enumerate(members):
                offsets[u] = lo + (hi - lo) * Fraction(r + 1, len(members) + 1)
    return offsets


def build_model(g: Graph, cp: CanonicalPartition) -> IntervalModel:
    check = verify_canonical(g, cp)
    if not check:
        raise VerificationError(f"canonical partition rejected: {check.violation}")
    offsets = layer_offsets(g, cp)
    where = cp.layer_index()
    return IntervalModel({v: where[v] + offsets[v] for v in g.vertices})


def build_model_any(g: Graph) -> IntervalModel:
    """Interval model for any unit interval graph; components are placed side by side."""
    left: Dict[Vertex, Fraction] = {}
    base = 0
    for comp, cp in zip(connected_components(g), component_partitions(g)):
        model = build_model(induced_subgraph(g, comp), cp)
        for v, x in model.left.items():
            left[v] = base + x
        base += len(cp) + 2
    return IntervalModel({v: left[v] for v in g.vertices})


def graph_from_model(im: IntervalModel) -> Graph:
    items = sorted(im.left.items(), key=lambda kv: kv[1])
    edges = []
    for i, (u, x) in enumerate(items):
        for v, y in items[i + 1:]:
            if y - x >= 1:
                break
            edges.append((u, v))
    return Graph(list(im.left), edges)


def format_model(im: IntervalModel) -> str:
    return "".join(f"i {v} {x.numerator}/{x.denominator}\n" for v, x in im.left.items())


def parse_model(text: str) -> IntervalModel:
    left = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "i":
            raise ParseError(f"expected 'i <id> <num>/<den>', got {line!r}", lineno, 1)
        try:
            left[parts[1]] = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {parts[2]!r}", lineno, 1) from None
    return IntervalModel(left)


# -- generators ----------------------------------------------------------------

RESOLUTION = 10 ** 6


def random_uig(n: int, spread, seed: int) -> Graph:
    """Intersection graph of n unit intervals with left ends uniform on [0, spread]."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    spread = Fraction(spread)
    if spread < 0:
        raise PreconditionError("spread must be non-negative")
    rng = random.Random(seed)
    left = {f"u{i}": spread * Fraction(rng.randint(0, RESOLUTION), RESOLUTION) for i in range(n)}
    return graph_from_model(IntervalModel(left))


@lru_cache(maxsize=256)
def h_expression(s: int, t: int) -> CwExpr:
    """Expression for H_{s,t} with at most 3s labels, assembled column by column."""
    h = generate_h(s, t)
    columns = [[cell_id(i, j) for i in range(1, s + 1)] for j in range(1, t + 1)]
    scheme = PartScheme(h, [frozenset(c) for c in columns], [path_expression(c) for c in columns])
    e = compose_partition(scheme, k=3, l=s)
    if width(e) > 3 * s:
        raise VerificationError(f"expression for H_{{{s},{t}}} uses {width(e)} labels")
    return e
