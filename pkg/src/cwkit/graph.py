"""Finite simple undirected graphs with stable vertex ids.

Everything downstream refers to vertices by their original ids, so a
:class:`Graph` never renames anything. Graphs are immutable values.
"""

from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

from .errors import ParseError, PreconditionError, SizeCapError

Vertex = Hashable

ISOMORPHISM_CAP = 16
EXHAUSTIVE_MODULE_CAP = 12


class Graph:
    __slots__ = ("_vertices", "_adj", "_index")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Tuple[Vertex, Vertex]] = ()):
        verts = tuple(vertices)
        index = {}
        for v in verts:
            if v in index:
                raise PreconditionError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        adj = {v: set() for v in verts}
        for u, v in edges:
            if u not in adj or v not in adj:
                raise PreconditionError(f"edge {u!r}-{v!r} has an undeclared endpoint")
            if u == v:
                raise PreconditionError(f"loop at {u!r}")
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = verts
        self._index = index
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        """Edges as pairs ordered by declaration order of the endpoints."""
        out = []
        for u in self._vertices:
            iu = self._index[u]
            for v in sorted(self._adj[u], key=self._index.__getitem__):
                if self._index[v] > iu:
                    out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def neighbors(self, v: Vertex) -> FrozenSet[Vertex]:
        return self._adj[v]

    def closed_neighbors(self, v: Vertex) -> FrozenSet[Vertex]:
        return self._adj[v] | {v}

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def index(self, v: Vertex) -> int:
        """Position of ``v`` in declaration order; the tie-breaking key everywhere."""
        return self._index[v]

    def sort(self, vs: Iterable[Vertex]) -> List[Vertex]:
        return sorted(vs, key=self._index.__getitem__)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._adj == other._adj

    def __hash__(self):
        return hash((frozenset(self._vertices), frozenset(frozenset(e) for e in self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.edge_count()})"

    def relabeled(self, mapping: Dict[Vertex, Vertex]) -> "Graph":
        return Graph([mapping[v] for v in self._vertices], [(mapping[u], mapping[v]) for u, v in self.edges()])


def _check_subset(g: Graph, u: Iterable[Vertex]) -> FrozenSet[Vertex]:
    u = frozenset(u)
    unknown = [v for v in u if v not in g]
    if unknown:
        raise PreconditionError(f"unknown vertex ids: {sorted(map(str, unknown))}")
    return u


class SimilarityPartition:
    """The U-similarity classes of a vertex subset U.

    ``classes[i]`` share the outside neighbourhood ``signatures[i]``.
    """

    __slots__ = ("subject", "classes", "signatures")

    def __init__(self, subject, classes, signatures):
        self.subject = subject
        self.classes = classes
        self.signatures = signatures

    @property
    def mu(self) -> int:
        return len(self.classes)

    def class_of(self, v) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise KeyError(v)

    def __repr__(self):
        return f"SimilarityPartition(mu={self.mu})"


def similarity_classes(g: Graph, u: Iterable[Vertex]) -> SimilarityPartition:
    u = _check_subset(g, u)
    groups: Dict[FrozenSet[Vertex], List[Vertex]] = {}
    for v in g.sort(u):
        groups.setdefault(g.neighbors(v) - u, []).append(v)
    # classes ordered by their first member, signatures kept alongside
    items = list(groups.items())
    return SimilarityPartition(u, [frozenset(vs) for _, vs in items], [sig for sig, _ in items])


def mu(g: Graph, u: Iterable[Vertex]) -> int:
    u = frozenset(u)
    return len({g.neighbors(v) - u for v in u})


def find_nontrivial_module(g: Graph) -> Optional[FrozenSet[Vertex]]:
    """Return some module U with 1 < |U| < |V|, or None when ``g`` is prime."""
    n = len(g)
    if n < 3:
        return None
    verts = g.vertices
    if n <= EXHAUSTIVE_MODULE_CAP:
        for size in range(2, n):
            for sub in combinations(verts, size):
                if mu(g, sub) == 1:
                    return frozenset(sub)
        return None
    # closure of each pair under splitters; the smallest module containing it
    for a, b in combinations(verts, 2):
        module = {a, b}
        grew = True
        while grew and len(module) < n:
            grew = False
            for x in verts:
                if x in module:
                    continue
                hits = g.neighbors(x) & module
                if hits and len(hits) < len(module):
                    module.add(x)
                    grew = True
        if len(module) < n:
            return frozenset(module)
    return None


def connected_components(g: Graph) -> List[FrozenSet[Vertex]]:
    seen = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def induced_subgraph(g: Graph, u: Iterable[Vertex]) -> Graph:
    u = _check_subset(g, u)
    verts = [v for v in g.vertices if v in u]
    return Graph(verts, [(a, b) for a, b in g.edges() if a in u and b in u])


def bfs_distances(g: Graph, source: Vertex) -> Dict[Vertex, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.sort(g.neighbors(v)):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _match(pattern: Graph, host: Graph, induced: bool, bijective: bool):
    """Backtracking search for an adjacency-preserving injection pattern -> host."""
    # order pattern vertices so each one (after the first in its component) has an earlier neighbour
    order = []
    placed = set()
    for comp in sorted(connected_components(pattern), key=len, reverse=True):
        start = max(comp, key=lambda v: (len(pattern.neighbors(v)), -pattern.index(v)))
        for v in bfs_distances(pattern, start):
            if v not in placed:
                order.append(v)
                placed.add(v)
    deg_p = {v: len(pattern.neighbors(v)) for v in pattern}
    deg_h = {v: len(host.neighbors(v)) for v in host}
    mapping: Dict[Vertex, Vertex] = {}
    used = set()

    def candidates(i):
        v = order[i]
        mapped_nbrs = [mapping[w] for w in pattern.neighbors(v) if w in mapping]
        if mapped_nbrs:
            pool = set(host.neighbors(mapped_nbrs[0]))
            for w in mapped_nbrs[1:]:
                pool &= host.neighbors(w)
        else:
            pool = set(host.vertices)
        pool -= used
        for c in host.sort(pool):
            if bijective and deg_h[c] != deg_p[v]:
                continue
            if not bijective and deg_h[c] < deg_p[v]:
                continue
            ok = True
            for w, img in mapping.items():
                if pattern.has_edge(v, w):
                    if not host.has_edge(c, img):
                        ok = False
                        break
                elif induced and host.has_edge(c, img):
                    ok = False
                    break
            if ok:
                yield c

    stack = [candidates(0)] if order else []
    if not order:
        return {}
    while stack:
        i = len(stack) - 1
        if i < len(mapping):
            old = mapping.pop(order[i])
            used.discard(old)
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            continue
        mapping[order[i]] = nxt
        used.add(nxt)
        if len(mapping) == len(order):
            return dict(mapping)
        stack.append(candidates(i + 1))
    return None


def is_isomorphic(g: Graph, h: Graph, cap: int = ISOMORPHISM_CAP) -> Optional[Dict[Vertex, Vertex]]:
    """A bijection V(g) -> V(h) preserving adjacency and non-adjacency, or None.

    Plain backtracking, exponential in the worst case; intended for small graphs.
    """
    if max(len(g), len(h)) > cap:
        raise SizeCapError(f"isomorphism test limited to {cap} vertices")
    if len(g) != len(h) or g.edge_count() != h.edge_count():
        return None
    if sorted(len(g.neighbors(v)) for v in g) != sorted(len(h.neighbors(v)) for v in h):
        return None
    return _match(g, h, induced=True, bijective=True)


def find_induced_copy(host: Graph, pattern: Graph) -> Optional[Dict[Vertex, Vertex]]:
    """An embedding of ``pattern`` as an induced subgraph of ``host``, or None."""
    if len(pattern) > len(host):
        return None
    return _match(pattern, host, induced=True, bijective=False)


# -- named small graphs --------------------------------------------------------

def path_graph(n: int, prefix: str = "p") -> Graph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(vs, zip(vs, vs[1:]))


def complete_graph(n: int, prefix: str = "k") -> Graph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(vs, combinations(vs, 2))


def disjoint_union(*graphs: Graph) -> Graph:
    verts, edges = [], []
    for g in graphs:
        verts.extend(g.vertices)
        edges.extend(g.edges())
    return Graph(verts, edges)


# -- text format ---------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    header = None
    verts, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if header is None:
            if kind != "graph" or len(parts) != 3:
                raise ParseError("expected header 'graph <n> <m>'", lineno, 1)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno, 1) from None
        elif kind == "v" and len(parts) == 2:
            verts.append(parts[1])
        elif kind == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno, 1)
    if header is None:
        raise ParseError("missing 'graph' header")
    if header != (len(verts), len(edges)):
        raise ParseError(f"header announces {header[0]} vertices/{header[1]} edges, found {len(verts)}/{len(edges)}")
    try:
        return Graph(verts, edges)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"graph {len(g)} {len(edges)}"]
    lines += [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G", ranks: Optional[List[List[Vertex]]] = None) -> str:
    """DOT rendering; ``ranks`` puts each listed group on one rank."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    if ranks:
        for group in ranks:
            lines.append("  { rank=same; " + " ".join(f'"{v}";' for v in group) + " }")
    for u, v in g.edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
