"""The canonical unit interval graphs H_{n,m} and cell embeddings into them.

Cell (i, j) is the vertex in row i and column j; rows are cliques and
v_{i,j} is adjacent to v_{i+1,1..j}.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .errors import ParseError, PreconditionError
from .graph import Graph, Vertex

Cell = Tuple[int, int]


@dataclass(frozen=True)
class CanonicalGraphSpec:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise PreconditionError("H_{n,m} needs n, m >= 1")


def cell_id(i: int, j: int) -> str:
    return f"v{i}_{j}"


def cells_adjacent(a: Cell, b: Cell) -> bool:
    (r1, c1), (r2, c2) = a, b
    if a == b:
        return False
    if r1 == r2:
        return True
    if r1 + 1 == r2:
        return c2 <= c1
    if r2 + 1 == r1:
        return c1 <= c2
    return False


def generate_h(n: int, m: Optional[int] = None) -> Graph:
    spec = CanonicalGraphSpec(n, n if m is None else m)
    n, m = spec.n, spec.m
    verts = [cell_id(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    edges = []
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for j2 in range(j + 1, m + 1):
                edges.append((cell_id(i, j), cell_id(i, j2)))
            if i < n:
                for j2 in range(1, j + 1):
                    edges.append((cell_id(i, j), cell_id(i + 1, j2)))
    return Graph(verts, edges)


def generate_H(spec: CanonicalGraphSpec) -> Graph:
    return generate_h(spec.n, spec.m)


def row_layers(n: int, m: int):
    """The rows of H_{n,m}, each left to right; a valid canonical layering."""
    return [[cell_id(i, j) for j in range(1, m + 1)] for i in range(1, n + 1)]


@dataclass
class CellEmbedding:
    """An injective placement of graph vertices on cells of H_{rows,cols}."""

    target: CanonicalGraphSpec
    cells: Dict[Vertex, Cell] = field(default_factory=dict)

    def image(self):
        return {v: cell_id(*c) for v, c in self.cells.items()}


@dataclass
class Check:
    """Outcome of a verification: truthy iff ``ok``; ``violation`` says why not."""

    ok: bool
    violation: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_embedding(g: Graph, emb: CellEmbedding) -> Check:
    if set(emb.cells) != set(g.vertices):
        missing = set(g.vertices) - set(emb.cells)
        extra = set(emb.cells) - set(g.vertices)
        return Check(False, f"embedding domain mismatch: missing {sorted(map(str, missing))}, extra {sorted(map(str, extra))}")
    seen = {}
    for v, (r, c) in emb.cells.items():
        if not (1 <= r <= emb.target.n and 1 <= c <= emb.target.m):
            return Check(False, f"{v} placed outside H_{{{emb.target.n},{emb.target.m}}} at {(r, c)}")
        if (r, c) in seen:
            return Check(False, f"{seen[(r, c)]} and {v} share cell {(r, c)}")
        seen[(r, c)] = v
    verts = g.vertices
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            u, v = verts[a], verts[b]
            if g.has_edge(u, v) != cells_adjacent(emb.cells[u], emb.cells[v]):
                want = "adjacent" if g.has_edge(u, v) else "non-adjacent"
                return Check(False, f"{u} and {v} are {want} in the graph but not their cells {emb.cells[u]}, {emb.cells[v]}")
    return Check(True)


def format_embedding(emb: CellEmbedding) -> str:
    lines = [f"target {emb.target.n} {emb.target.m}"]
    lines += [f"map {v} {r} {c}" for v, (r, c) in emb.cells.items()]
    return "\n".join(lines) + "\n"


def parse_embedding(text: str) -> CellEmbedding:
    target = None
    cells = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "target" and len(parts) == 3 and target is None:
                target = CanonicalGraphSpec(int(parts[1]), int(parts[2]))
            elif parts[0] == "map" and len(parts) == 4 and target is not None:
                if parts[1] in cells:
                    raise ParseError(f"vertex {parts[1]} mapped twice", lineno, 1)
                cells[parts[1]] = (int(parts[2]), int(parts[3]))
            else:
                raise ParseError(f"unrecognised line {line!r}", lineno, 1)
        except ValueError:
            raise ParseError("expected integers", lineno, 1) from None
    if target is None:
        raise ParseError("missing 'target' line")
    return CellEmbedding(target, cells)
