"""Bounded-width expressions for unit interval graphs without a large H_{k,k}.

Pipeline: collapse true twins, then per component repeatedly cut a window of
k consecutive layers off the left end. Inside the window the cluster graph
B* (one node per cluster of each consecutive-layer co-chain graph, one edge
per vertex) is split by a minimum vertex separator into an upper side X and
a lower side Y. X becomes the next part; the residual graph is re-layered
and the procedure repeats. Each part is a few rows of a canonical graph, so
restricting the column-wise expression of H_{r,c} gives it at most 3k
labels, and the parts are glued together by similarity-class composition.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .canonical import Check, cell_id, generate_h
from .cochain import check_cochain, clusters
from .embedding import embed_layered
from .errors import NotUnitIntervalError, PreconditionError, VerificationError
from .expr import (CompositionReport, Create, CwExpr, Join, PartScheme, Relabel, Union,
                   compose_partition, created_vertices, evaluate, fold, labels_used,
                   rename_vertices, restrict, union_all, width)
from .graph import (Graph, Vertex, connected_components, find_induced_copy, induced_subgraph, mu)
from .uig import (CanonicalPartition, IntervalModel, build_model, build_model_any,
                  canonical_partition, component_partitions, graph_from_model, layer_offsets,
                  normalized_orders, random_uig, verify_canonical, h_expression)

Node = Tuple[int, int]  # (level, position), both 1-based


def mu_bound(k: int) -> int:
    return 4 * k * k - 5 * k


def width_bound(k: int) -> int:
    return 12 * k ** 3 + 72 * k ** 2 - 36 * k + 96


# -- true twins ----------------------------------------------------------------

@dataclass
class TwinMap:
    """Representative -> all members of its true-twin class, representative first."""

    classes: Dict[Vertex, Tuple[Vertex, ...]]

    def is_identity(self) -> bool:
        return all(len(ms) == 1 for ms in self.classes.values())


def collapse_twins(g: Graph) -> Tuple[Graph, TwinMap]:
    groups: Dict[FrozenSet[Vertex], List[Vertex]] = {}
    for v in g.vertices:
        groups.setdefault(g.closed_neighbors(v), []).append(v)
    classes = {ms[0]: tuple(ms) for ms in groups.values()}
    return induced_subgraph(g, classes), TwinMap(classes)


def expand_twins(e: CwExpr, tm: TwinMap) -> CwExpr:
    """Re-insert collapsed twins right where their representative is created.

    The twin gets a temporary label already used elsewhere in ``e`` (only a
    single-label expression needs one more), is joined to the representative
    and then renamed to the representative's label, so from that point on
    both behave identically.
    """
    extra = {rep: ms[1:] for rep, ms in tm.classes.items() if len(ms) > 1}
    if not extra:
        return e
    created = set(created_vertices(e))
    if not set(extra) <= created or any(x in created for ms in extra.values() for x in ms):
        raise PreconditionError("twin map does not match the expression's vertices")
    used = sorted(labels_used(e))

    def step(node, kids):
        if isinstance(node, Create):
            if node.vertex not in extra:
                return node
            lab = node.label
            tmp = next((x for x in used if x != lab), lab + 1)
            out = node
            for x in extra[node.vertex]:
                out = Relabel(tmp, lab, Join(lab, tmp, Union(out, Create(tmp, x))))
            return out
        if isinstance(node, Union):
            return Union(*kids)
        return type(node)(node.i, node.j, kids[0])

    return fold(e, step)


# -- trivial clusters ----------------------------------------------------------

def _fresh(g: Graph, taken: set, stem: str) -> str:
    name, n = stem, 0
    while name in g or name in taken:
        n += 1
        name = f"{stem}_{n}"
    taken.add(name)
    return name


def augment_trivial(g: Graph, cp: CanonicalPartition):
    """Pad layers so that no consecutive-layer co-chain graph has a trivial cluster.

    Returns (g2, cp2, added). A vertex of an upper layer without neighbours
    below is fixed by a new lower vertex adjacent to the whole upper layer and
    to nothing further up; symmetrically for lower vertices without neighbours
    above. New vertices may cascade, but each layer gains at most one vertex
    per direction.
    """
    offsets = layer_offsets(g, cp)
    orders = [sorted(q, key=offsets.__getitem__) for q in normalized_orders(g, cp)]
    off = dict(offsets)
    taken: set = set()
    added = []
    # lower vertices with no neighbour above: new upper vertex to the right of everything
    for j in range(len(orders) - 1, 0, -1):
        upper, lower = orders[j - 1], orders[j]
        if off[lower[-1]] >= off[upper[-1]]:
            z = _fresh(g, taken, f"aug{j - 1}u")
            off[z] = (off[lower[-1]] + 1) / 2
            upper.append(z)
            added.append((z, j - 1))
    # upper vertices with no neighbour below: new lower vertex to the left of everything
    for j in range(len(orders) - 1):
        upper, lower = orders[j], orders[j + 1]
        if off[upper[0]] <= off[lower[0]]:
            z = _fresh(g, taken, f"aug{j + 1}d")
            off[z] = off[upper[0]] / 2
            lower.insert(0, z)
            added.append((z, j + 1))
    where = {v: j for j, q in enumerate(orders) for v in q}
    ids = list(g.vertices) + [z for z, _ in added]
    g2 = graph_from_model(IntervalModel({v: where[v] + off[v] for v in ids}))
    cp2 = CanonicalPartition(orders)
    if induced_subgraph(g2, g.vertices) != g:
        raise VerificationError("augmentation changed the original graph")
    check = verify_canonical(g2, cp2)
    if not check:
        raise VerificationError(f"augmented partition invalid: {check.violation}")
    return g2, cp2, added


# -- cluster graph -------------------------------------------------------------

@dataclass
class ClusterGraph:
    """B(G): clusters of every consecutive-layer co-chain graph, vertices as edges.

    ``edge_of[v] = (up, down)``: the cluster containing v at the level above
    its layer and the one at the level below; None marks a pendant end (first
    or last layer, or a vertex in no cluster at that level).
    """

    layers: List[List[Vertex]]
    levels: List[List[Node]]
    node_members: Dict[Node, FrozenSet[Vertex]]
    edge_of: Dict[Vertex, Tuple[Optional[Node], Optional[Node]]]
    layer_of: Dict[Vertex, int] = field(default_factory=dict)

    @property
    def nodes(self) -> List[Node]:
        return [x for lv in self.levels for x in lv]

    def edges(self) -> List[Tuple[Node, Node, Vertex]]:
        return [(a, b, v) for v, (a, b) in self.edge_of.items() if a is not None and b is not None]

    def neighbours(self) -> Dict[Node, List[Node]]:
        adj: Dict[Node, set] = {x: set() for x in self.nodes}
        for a, b, _ in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        return {x: sorted(ns) for x, ns in adj.items()}

    def components(self) -> List[List[Node]]:
        adj = self.neighbours()
        seen, out = set(), []
        for x in self.nodes:
            if x in seen:
                continue
            comp, queue = [x], deque([x])
            seen.add(x)
            while queue:
                y = queue.popleft()
                for z in adj[y]:
                    if z not in seen:
                        seen.add(z)
                        comp.append(z)
                        queue.append(z)
            out.append(sorted(comp))
        return out


def build_BG(g: Graph, cp: CanonicalPartition, allow_trivial: bool = False) -> ClusterGraph:
    """Cluster graph of ``g`` under ``cp``; layers are taken in left-to-right offset order.

    With ``allow_trivial`` vertices in trivial clusters become pendant edges
    instead of raising.
    """
    check = verify_canonical(g, cp)
    if not check:
        raise PreconditionError(f"invalid canonical partition: {check.violation}")
    offsets = layer_offsets(g, cp)
    orders = [sorted(q, key=offsets.__getitem__) for q in normalized_orders(g, cp)]
    up: Dict[Vertex, Optional[Node]] = {v: None for v in g.vertices}
    down: Dict[Vertex, Optional[Node]] = {v: None for v in g.vertices}
    levels, members = [], {}
    for h in range(1, len(orders)):
        upper, lower = orders[h - 1], orders[h]
        sub = induced_subgraph(g, upper + lower)
        part = clusters(check_cochain(sub, upper, lower, order1=upper, order2=lower))
        if (part.trivial1 or part.trivial2) and not allow_trivial:
            bad = (part.trivial1 + part.trivial2)[0]
            raise PreconditionError(f"trivial cluster at level {h} (vertex {bad})")
        ids = []
        for p, cl in enumerate(part.clusters, 1):
            node = (h, p)
            ids.append(node)
            members[node] = cl.members
            for v in cl.upper:
                down[v] = node
            for v in cl.lower:
                up[v] = node
        levels.append(ids)
    bg = ClusterGraph(orders, levels, members, {v: (up[v], down[v]) for v in g.vertices},
                      {v: j for j, q in enumerate(orders) for v in q})
    for (a, b, v) in bg.edges():
        if v not in members[a] or v not in members[b]:
            raise VerificationError(f"edge of {v} does not match cluster membership")
    return bg


# -- disjoint paths and separator ----------------------------------------------

_INF = 1 << 30


class _Flow:
    """Unit node-capacity flow on the split graph of a node subset of B*."""

    def __init__(self, bg: ClusterGraph, top: int, bottom: int):
        self.top, self.bottom = top, bottom
        self.nodes = [x for lv in bg.levels[top - 1:bottom] for x in lv]
        inside = set(self.nodes)
        self.cap: Dict[tuple, int] = {}
        self.adj: Dict[tuple, List[tuple]] = {}
        adj = bg.neighbours()
        for x in self.nodes:
            self._arc(("in", x), ("out", x), 1)
            for y in adj[x]:
                if y in inside:
                    self._arc(("out", x), ("in", y), _INF)
            if x[0] == top:
                self._arc("s", ("in", x), _INF)
            if x[0] == bottom:
                self._arc(("out", x), "t", _INF)
        # leftmost first: nodes sort by (level, position)
        for key in self.adj:
            self.adj[key].sort(key=lambda z: (z == "t", z[1] if isinstance(z, tuple) else (0, 0)))

    def _arc(self, a, b, c):
        self.cap[(a, b)] = self.cap.get((a, b), 0) + c
        self.cap.setdefault((b, a), 0)
        self.adj.setdefault(a, [])
        self.adj.setdefault(b, [])
        if b not in self.adj[a]:
            self.adj[a].append(b)
        if a not in self.adj[b]:
            self.adj[b].append(a)

    def augment(self) -> bool:
        prev = {"s": None}
        stack = ["s"]
        while stack:
            a = stack.pop()
            if a == "t":
                break
            for b in reversed(self.adj[a]):
                if b not in prev and self.cap[(a, b)] > 0:
                    prev[b] = a
                    stack.append(b)
        if "t" not in prev:
            return False
        b = "t"
        while prev[b] is not None:
            a = prev[b]
            self.cap[(a, b)] -= 1
            self.cap[(b, a)] += 1
            b = a
        return True

    def reachable(self) -> set:
        seen = {"s"}
        queue = deque(["s"])
        while queue:
            a = queue.popleft()
            for b in self.adj[a]:
                if b not in seen and self.cap[(a, b)] > 0:
                    seen.add(b)
                    queue.append(b)
        return seen


def _solve_flow(bg: ClusterGraph, top: int, bottom: int) -> _Flow:
    if not (1 <= top <= bottom <= len(bg.levels)):
        raise PreconditionError(f"levels {top}..{bottom} outside 1..{len(bg.levels)}")
    flow = _Flow(bg, top, bottom)
    while flow.augment():
        pass
    return flow


def _paths_from_flow(flow: _Flow) -> List[List[Node]]:
    # flow sent along out(x) -> in(y) shows up as residual capacity on in(y) -> out(x)
    succ: Dict[Node, List[Node]] = {}
    for x in flow.nodes:
        for b in flow.adj[("out", x)]:
            if isinstance(b, tuple) and b[0] == "in":
                y = b[1]
                net = flow.cap[(("in", y), ("out", x))] - flow.cap.get((("in", x), ("out", y)), 0)
                if net > 0:
                    succ.setdefault(x, []).append(y)
    paths = []
    for x in flow.nodes:
        if x[0] != flow.top or flow.cap[(("in", x), "s")] == 0:
            continue
        path = [x]
        while not (path[-1][0] == flow.bottom and flow.cap[("t", ("out", path[-1]))] > 0):
            path.append(succ[path[-1]].pop(0))
        paths.append(path)
    return paths


def max_disjoint_paths(bg: ClusterGraph, top_level: int = 1, bottom_level: Optional[int] = None) -> List[List[Node]]:
    """Maximum set of node-disjoint paths from ``top_level`` to ``bottom_level`` in B."""
    bottom = len(bg.levels) if bottom_level is None else bottom_level
    return _paths_from_flow(_solve_flow(bg, top_level, bottom))


def min_separator(bg: ClusterGraph, paths: Sequence[Sequence[Node]], top_level: int = 1,
                  bottom_level: Optional[int] = None) -> List[Node]:
    """Minimum node cut between the two levels, the one closest to the top."""
    bottom = len(bg.levels) if bottom_level is None else bottom_level
    flow = _solve_flow(bg, top_level, bottom)
    seen = flow.reachable()
    cut = sorted(x for x in flow.nodes if ("in", x) in seen and ("out", x) not in seen)
    if len(cut) != len(paths):
        raise VerificationError(f"separator has {len(cut)} nodes but there are {len(paths)} disjoint paths")
    for p in paths:
        if sum(1 for x in p if x in cut) != 1:
            raise VerificationError(f"path {p} meets the separator {sum(1 for x in p if x in cut)} times")
    return cut
# -- the X/Y split of a window -------------------------------------------------

@dataclass
class Block:
    layer: int
    vertices: Tuple[Vertex, ...]
    kind: str  # path-edge, path-adjacent or stripe-interior


@dataclass
class WindowSplit:
    window: Graph
    paths: List[List[Node]]
    separator: List[Node]
    x_side: FrozenSet[Vertex]
    y_side: FrozenSet[Vertex]
    blocks: List[Block]
    mu_x: int = 0
    mu_y: int = 0
    layering: Optional[CanonicalPartition] = None

    def blocks_per_layer(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for b in self.blocks:
            out[b.layer] = out.get(b.layer, 0) + 1
        return out


def _sides(bg: ClusterGraph, S: set) -> Dict[Vertex, str]:
    """Upper (X) or lower (Y) side of every vertex of the window."""
    adj = bg.neighbours()
    last = len(bg.levels)

    def sweep(level):
        start = [x for x in bg.levels[level - 1] if x not in S]
        seen = set(start)
        queue = deque(start)
        while queue:
            y = queue.popleft()
            for z in adj[y]:
                if z not in S and z not in seen:
                    seen.add(z)
                    queue.append(z)
        return seen

    top, bottom = sweep(1), sweep(last)
    if top & bottom:
        raise VerificationError("separator does not separate the marginal levels")
    node_side = {x: ("Y" if x in bottom else "X") for x in bg.nodes}
    last_layer = len(bg.layers) - 1
    side = {}
    for v, (a, b) in bg.edge_of.items():
        free = [x for x in (a, b) if x is not None and x not in S]
        if free:
            sides = {node_side[x] for x in free}
            if len(sides) > 1:
                raise VerificationError(f"vertex {v} joins both sides outside the separator")
            side[v] = sides.pop()
        elif bg.layer_of[v] == last_layer:
            side[v] = "Y"
        elif a is not None and b is not None:
            # both ends on the separator: the upper end decides, so the edge stays below it
            side[v] = "Y"
        else:
            side[v] = "X"
    return side


def _blocks(bg: ClusterGraph, S: set, paths) -> List[Block]:
    on_path = {x for p in paths for x in p}
    path_steps = {frozenset(pair) for p in paths for pair in zip(p, p[1:])}
    out = []
    for j, layer in enumerate(bg.layers):
        run: List[Vertex] = []
        key = None
        for v in layer + [None]:
            if v is not None:
                a, b = bg.edge_of[v]
                k2 = (a if a in S else None, b if b in S else None)
            if run and (v is None or k2 != key):
                ends = {x for u in run for x in bg.edge_of[u] if x is not None}
                if any(frozenset(bg.edge_of[u]) in path_steps for u in run):
                    kind = "path-edge"
                elif ends & on_path:
                    kind = "path-adjacent"
                else:
                    kind = "stripe-interior"
                out.append(Block(j, tuple(run), kind))
                run = []
            if v is not None:
                run.append(v)
                key = k2
    return out


def xy_split(window: Graph, bg: ClusterGraph, S: Sequence[Node], paths, k: int) -> WindowSplit:
    """Split a window along the separator and check the bounds the construction relies on.

    Blocks are the maximal runs of a layer (in offset order) whose vertices
    meet the same separator nodes. Within a block the X vertices must see
    the same Y vertices and vice versa, and the number of blocks per layer
    is at most 2σ+1 where σ counts separator nodes on the two adjacent levels.
    """
    S = set(S)
    side = _sides(bg, S)
    X = frozenset(v for v in window.vertices if side[v] == "X")
    Y = frozenset(window.vertices) - X
    blocks = _blocks(bg, S, paths)
    s = len(S)
    per_layer = {}
    for b in blocks:
        per_layer[b.layer] = per_layer.get(b.layer, 0) + 1
        for part, other in ((X, Y), (Y, X)):
            sigs = {window.neighbors(v) & other for v in b.vertices if v in part}
            if len(sigs) > 1:
                raise VerificationError(f"block {b.vertices} of layer {b.layer} is not uniform")
    if s >= 1 and max(per_layer.values()) > 4 * s - 1:
        raise VerificationError(f"a layer splits into {max(per_layer.values())} blocks, more than {4 * s - 1}")
    last_layer = len(bg.layers) - 1
    if any(bg.layer_of[v] == last_layer for v in X):
        raise VerificationError("the upper side reaches the last layer of the window")
    mx, my = mu(window, X), mu(window, Y)
    if max(mx, my) > mu_bound(k):
        raise VerificationError(f"similarity classes {mx}/{my} exceed {mu_bound(k)}")
    return WindowSplit(window, [list(p) for p in paths], sorted(S), X, Y, blocks, mx, my)


# -- decomposition -------------------------------------------------------------

@dataclass
class StepReport:
    layers: int
    size: int
    s: Optional[int] = None
    blocks: Optional[int] = None
    mu_x: Optional[int] = None
    mu_y: Optional[int] = None
    mu_part: int = 0
    mu_prefix: int = 0
    part_width: int = 0


@dataclass
class Decomposition:
    parts: List[FrozenSet[Vertex]]
    layerings: List[CanonicalPartition]
    steps: List[StepReport]
    splits: List[Optional[WindowSplit]] = field(default_factory=list)


def window_at(g: Graph, cp: CanonicalPartition, start: int, k: int):
    """The subgraph G* on layers start..start+k-1, with its inherited layering."""
    if not 0 <= start <= len(cp) - k:
        raise PreconditionError(f"no {k} consecutive layers start at {start}")
    offsets = layer_offsets(g, cp)
    orders = [sorted(q, key=offsets.__getitem__) for q in normalized_orders(g, cp)][start:start + k]
    return induced_subgraph(g, [v for q in orders for v in q]), CanonicalPartition(orders)


def split_window(g: Graph, cp: CanonicalPartition, start: int, k: int) -> WindowSplit:
    """Run paths, separator and split on one k-layer window."""
    window, wcp = window_at(g, cp, start, k)
    bg = build_BG(window, wcp, allow_trivial=True)
    paths = max_disjoint_paths(bg, 1, k - 1)
    if len(paths) > k - 1:
        raise PreconditionError(f"a {k}-layer window carries {len(paths)} disjoint cluster paths; "
                                f"the graph is not H_{{{k},{k}}}-free")
    S = min_separator(bg, paths, 1, k - 1)
    split = xy_split(window, bg, S, paths, k)
    split.layering = wcp
    return split


def decompose(g: Graph, k: int, check_mu: bool = True) -> Decomposition:
    """Cut a connected unit interval graph into parts V_1..V_t, left to right.

    Every part except possibly the last is the upper side of a k-layer window.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if len(connected_components(g)) != 1:
        raise PreconditionError("decompose needs a connected graph")
    left = build_model(g, canonical_partition(g)).left
    key = lambda v: (left[v], g.index(v))
    residual = set(g.vertices)
    parts, layerings, steps, splits = [], [], [], []
    prefix = set()
    while residual:
        rest = induced_subgraph(g, residual)
        comp = min(connected_components(rest), key=lambda c: min(map(key, c)))
        rg = induced_subgraph(g, comp)
        cp = canonical_partition(rg, starts=sorted(comp, key=key))
        if len(cp) < k:
            part = frozenset(comp)
            layering = cp
            rep = StepReport(len(cp), len(part))
            split = None
        else:
            split = split_window(rg, cp, 0, k)
            part = split.x_side
            layering = CanonicalPartition([[v for v in q if v in part] for q in split.layering.order_in_layer])
            layering = CanonicalPartition([q for q in layering.order_in_layer if q])
            rep = StepReport(k, len(part), len(split.paths), max(split.blocks_per_layer().values()),
                             split.mu_x, split.mu_y)
        prefix |= part
        rep.mu_part, rep.mu_prefix = mu(g, part), mu(g, prefix)
        if check_mu and max(rep.mu_part, rep.mu_prefix) > mu_bound(k) and len(cp) >= k:
            raise VerificationError(f"part similarity classes {rep.mu_part}/{rep.mu_prefix} exceed {mu_bound(k)}")
        parts.append(part)
        layerings.append(layering)
        steps.append(rep)
        splits.append(split)
        residual -= part
    return Decomposition(parts, layerings, steps, splits)


def part_expression(g: Graph, part: FrozenSet[Vertex], layering: CanonicalPartition) -> CwExpr:
    """Expression for G[part] read off a few rows of a canonical graph.

    ``layering`` lists the part's vertices by layer; each connected piece is
    embedded row by row and the column-wise expression of H_{rows,cols} is
    restricted to the image.
    """
    sub = induced_subgraph(g, part)
    exprs = []
    for comp in connected_components(sub):
        piece = induced_subgraph(sub, comp)
        cp = CanonicalPartition([[v for v in q if v in comp] for q in layering.order_in_layer])
        cp = CanonicalPartition([q for q in cp.order_in_layer if q])
        check = verify_canonical(piece, cp)
        if not check:
            raise VerificationError(f"part layering invalid: {check.violation}")
        emb = embed_layered(piece, cp)
        spec = emb.target
        e = restrict(h_expression(spec.n, spec.m), [cell_id(*c) for c in emb.cells.values()])
        exprs.append(rename_vertices(e, {cell_id(*c): v for v, c in emb.cells.items()}))
    return union_all(exprs)


# -- synthesis -----------------------------------------------------------------

@dataclass
class SynthesisReport:
    k: int
    n: int
    width: int = 0
    bound: int = 0
    twins_collapsed: int = 0
    components: List[dict] = field(default_factory=list)


def synthesize(g: Graph, k: int, report: Optional[SynthesisReport] = None) -> CwExpr:
    """Expression for an H_{k,k}-free unit interval graph within the width bound for k."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if len(g) == 0:
        raise PreconditionError("empty graph")
    component_partitions(g)
    collapsed, tm = collapse_twins(g)
    exprs = []
    comp_reports = []
    for comp in connected_components(collapsed):
        sub = induced_subgraph(collapsed, comp)
        if len(sub) == 1:
            exprs.append(Create(1, sub.vertices[0]))
            comp_reports.append({"size": 1, "parts": 1, "steps": [], "l": 1, "width": 1})
            continue
        dec = decompose(sub, k)
        part_exprs = [part_expression(sub, p, lay) for p, lay in zip(dec.parts, dec.layerings)]
        for st, pe in zip(dec.steps, part_exprs):
            st.part_width = width(pe)
        comp_rep: List[CompositionReport] = []
        e = compose_partition(PartScheme(sub, dec.parts, part_exprs), report=comp_rep)
        exprs.append(e)
        comp_reports.append({"size": len(sub), "parts": len(dec.parts), "steps": [vars(s) for s in dec.steps],
                             "k": comp_rep[0].k, "l": comp_rep[0].l, "width": comp_rep[0].width})
    e = expand_twins(union_all(exprs), tm)
    if evaluate(e).graph != g:
        raise VerificationError("synthesised expression does not evaluate to the input graph")
    w, bound = width(e), width_bound(k)
    if report is not None:
        report.k, report.n, report.width, report.bound = k, len(g), w, bound
        report.twins_collapsed = len(g) - len(collapsed)
        report.components = comp_reports
    if w > bound:
        raise VerificationError(f"width {w} exceeds the bound {bound} for k={k}")
    return e


def forbidden_to_k(f: Graph) -> int:
    """Order of the canonical graph containing ``f``: f-free implies H_{k,k}-free for this k."""
    if len(f) == 0:
        raise PreconditionError("forbidden graph is empty")
    component_partitions(f)
    return len(f)


# -- H_{k,k}-free inputs -------------------------------------------------------

def clique_number(g: Graph) -> int:
    left = build_model_any(g).left
    xs = sorted(left.values())
    best, lo = 0, 0
    for hi, x in enumerate(xs):
        while x - xs[lo] >= 1:
            lo += 1
        best = max(best, hi - lo + 1)
    return best


def is_hkk_free(g: Graph, k: int, cap: int = 40) -> Optional[bool]:
    """Exact for small graphs; None when undecided (no cheap certificate and too large)."""
    if clique_number(g) <= k:
        return True  # H_{k,k} has a clique of size k+1
    if len(g) > cap:
        return None
    return find_induced_copy(g, generate_h(k, k)) is None


def random_sparse_uig(n: int, k: int, seed: int) -> Graph:
    """Random unit interval graph with clique number at most k, vertices in shuffled order."""
    rng = random.Random(seed)
    lefts: List[Fraction] = []
    x = Fraction(0)
    for i in range(n):
        if i:
            x += Fraction(rng.choice([0, rng.randint(1, 600), rng.randint(1, 1100)]), 1000)
        while sum(1 for y in lefts if x - y < 1) >= k:
            x = min(y for y in lefts if x - y < 1) + 1 + Fraction(rng.randint(0, 300), 1000)
        lefts.append(x)
    ids = [f"u{i}" for i in range(n)]
    rng.shuffle(ids)
    return graph_from_model(IntervalModel(dict(zip(ids, lefts))))


def free_corpus(k: int, count: int, seed: int, max_n: int = 60, dense_n: int = 18):
    """Seeded H_{k,k}-free unit interval graphs: mostly clique number <= k, some
    denser ones certified by exhaustive search."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = rng.randrange(1 << 30)
        if rng.random() < 0.7:
            out.append(random_sparse_uig(rng.randint(2, max_n), k, s))
        else:
            n = rng.randint(2, dense_n)
            g = random_uig(n, Fraction(rng.randint(n // 4, n), 2), s)
            if is_hkk_free(g, k):
                out.append(g)
    return out
