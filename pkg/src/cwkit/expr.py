"""Clique-width expressions: AST, evaluation, text syntax and surgery.

The four node kinds are ``Create(label, vertex)``, ``Union(left, right)``,
``Join(i, j, child)`` and ``Relabel(i, j, child)`` (rename i to j).
Synthesised expressions get deep, so every traversal here is iterative.

Text syntax::

    expr := create(INT, ID) | union(expr, expr) | eta(INT, INT, expr) | rho(INT, INT, expr)
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import ParseError, PreconditionError, VerificationError
from .graph import Graph, Vertex, induced_subgraph, similarity_classes


class CwExpr:
    __slots__ = ()

    def children(self) -> Tuple["CwExpr", ...]:
        return ()

    def __eq__(self, other):
        if not isinstance(other, CwExpr):
            return NotImplemented
        return structurally_equal(self, other)

    def __hash__(self):
        return hash(render(self))

    def __repr__(self):
        text = render(self)
        return text if len(text) < 120 else text[:117] + "..."


@dataclass(frozen=True, eq=False, repr=False)
class Create(CwExpr):
    label: int
    vertex: Vertex


@dataclass(frozen=True, eq=False, repr=False)
class Union(CwExpr):
    left: CwExpr
    right: CwExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False, repr=False)
class Join(CwExpr):
    i: int
    j: int
    child: CwExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=False, repr=False)
class Relabel(CwExpr):
    i: int
    j: int
    child: CwExpr

    def children(self):
        return (self.child,)


def fold(e: CwExpr, fn: Callable):
    """Post-order fold: ``fn(node, child_results)`` for each node, bottom-up."""
    results: List = []
    stack = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        kids = node.children()
        if expanded or not kids:
            vals = results[len(results) - len(kids):] if kids else []
            if kids:
                del results[len(results) - len(kids):]
            results.append(fn(node, vals))
        else:
            stack.append((node, True))
            for kid in reversed(kids):
                stack.append((kid, False))
    return results[0]


def structurally_equal(a: CwExpr, b: CwExpr) -> bool:
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if type(x) is not type(y):
            return False
        if isinstance(x, Create):
            if (x.label, x.vertex) != (y.label, y.vertex):
                return False
        elif isinstance(x, Union):
            stack.append((x.left, y.left))
            stack.append((x.right, y.right))
        else:
            if (x.i, x.j) != (y.i, y.j):
                return False
            stack.append((x.child, y.child))
    return True


# -- evaluation ----------------------------------------------------------------

class LabeledGraph:
    __slots__ = ("graph", "label_of")

    def __init__(self, graph: Graph, label_of: Dict[Vertex, int]):
        self.graph = graph
        self.label_of = label_of

    def __repr__(self):
        return f"LabeledGraph({self.graph!r}, labels={sorted(set(self.label_of.values()))})"


def validate(e: CwExpr) -> None:
    """Raise PreconditionError unless vertices are created once and i != j everywhere."""
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Create):
            if not isinstance(node.label, int) or node.label < 1:
                raise PreconditionError(f"label must be a positive integer, got {node.label!r}")
            if node.vertex in seen:
                raise PreconditionError(f"vertex {node.vertex!r} created twice")
            seen.add(node.vertex)
        elif isinstance(node, (Join, Relabel)):
            if node.i == node.j:
                kind = "eta" if isinstance(node, Join) else "rho"
                raise PreconditionError(f"{kind}({node.i},{node.j}) needs distinct labels")
            if min(node.i, node.j) < 1:
                raise PreconditionError("labels must be positive integers")
        stack.extend(node.children())


def evaluate(e: CwExpr) -> LabeledGraph:
    validate(e)

    # state per subterm: (order, label_of, classes label->set, edges)
    def step(node, kids):
        if isinstance(node, Create):
            return [node.vertex], {node.vertex: node.label}, {node.label: {node.vertex}}, set()
        if isinstance(node, Union):
            (o1, l1, c1, e1), (o2, l2, c2, e2) = kids
            if len(l1) < len(l2):
                # merge the smaller side into the larger one, order stays left-then-right
                l2.update(l1)
                for lab, vs in c1.items():
                    c2.setdefault(lab, set()).update(vs)
                e2 |= e1
                return o1 + o2, l2, c2, e2
            l1.update(l2)
            for lab, vs in c2.items():
                c1.setdefault(lab, set()).update(vs)
            e1 |= e2
            o1.extend(o2)
            return o1, l1, c1, e1
        order, labels, classes, edges = kids[0]
        if isinstance(node, Join):
            for u in classes.get(node.i, ()):
                for v in classes.get(node.j, ()):
                    edges.add(frozenset((u, v)))
            return order, labels, classes, edges
        moved = classes.pop(node.i, None)
        if moved:
            classes.setdefault(node.j, set()).update(moved)
            for v in moved:
                labels[v] = node.j
        return order, labels, classes, edges

    order, labels, _, edges = fold(e, step)
    graph = Graph(order, [tuple(pair) for pair in edges])
    return LabeledGraph(graph, labels)


def labels_used(e: CwExpr) -> FrozenSet[int]:
    out = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Create):
            out.add(node.label)
        elif isinstance(node, (Join, Relabel)):
            out.add(node.i)
            out.add(node.j)
        stack.extend(node.children())
    return frozenset(out)


def width(e: CwExpr) -> int:
    """Number of distinct labels occurring in ``e``: an upper bound on clique-width."""
    return len(labels_used(e))


def created_vertices(e: CwExpr) -> List[Vertex]:
    out = []
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Create):
            out.append(node.vertex)
        else:
            stack.extend(reversed(node.children()))
    return out


def size(e: CwExpr) -> int:
    return fold(e, lambda node, kids: 1 + sum(kids))


# -- text syntax ---------------------------------------------------------------

def render(e: CwExpr) -> str:
    def step(node, kids):
        if isinstance(node, Create):
            return f"create({node.label},{node.vertex})"
        if isinstance(node, Union):
            return f"union({kids[0]}, {kids[1]})"
        name = "eta" if isinstance(node, Join) else "rho"
        return f"{name}({node.i},{node.j}, {kids[0]})"

    return fold(e, step)


_TOKEN = re.compile(r"\s+|#[^\n]*|[(),]|[^\s(),#]+")
_ARITY = {"create": ("int", "id"), "union": ("expr", "expr"), "eta": ("int", "int", "expr"), "rho": ("int", "int", "expr")}


def _tokens(text: str):
    line, col_base = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        tok = m.group()
        col = pos - col_base + 1
        if tok.isspace() or tok.startswith("#"):
            newlines = tok.count("\n")
            if newlines:
                line += newlines
                col_base = pos + tok.rfind("\n") + 1
        else:
            yield tok, line, col
        pos = m.end()
    yield None, line, pos - col_base + 1


def parse(text: str) -> CwExpr:
    """Parse the expression syntax; raises ParseError with line/column on failure.

    Semantic problems (duplicate creation, i == j) are reported as ParseError too.
    """
    toks = _tokens(text)
    # frames: [op, args-so-far, line, col]
    stack: List[list] = []
    result = None

    def expect(want):
        tok, line, col = next(toks)
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok or 'end of input'!r}", line, col)

    def read_atom(kind):
        tok, line, col = next(toks)
        if tok is None or tok in "(),":
            raise ParseError(f"expected {'integer' if kind == 'int' else 'identifier'}, found {tok or 'end of input'!r}", line, col)
        if kind == "int":
            if not tok.isdigit():
                raise ParseError(f"expected integer label, found {tok!r}", line, col)
            return int(tok)
        return tok

    def open_frame():
        tok, line, col = next(toks)
        if tok not in _ARITY:
            raise ParseError(f"expected create/union/eta/rho, found {tok or 'end of input'!r}", line, col)
        expect("(")
        stack.append([tok, [], line, col])

    open_frame()
    while True:
        op, args, line, col = stack[-1]
        kinds = _ARITY[op]
        if len(args) < len(kinds):
            if args:
                expect(",")
            kind = kinds[len(args)]
            if kind == "expr":
                open_frame()
                continue
            args.append(read_atom(kind))
            continue
        expect(")")
        stack.pop()
        if op == "create":
            node = Create(*args)
        elif op == "union":
            node = Union(*args)
        elif op == "eta":
            node = Join(*args)
        else:
            node = Relabel(*args)
        if not stack:
            result = node
            break
        stack[-1][1].append(node)
    tok, line, col = next(toks)
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", line, col)
    try:
        validate(result)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None
    return result


# -- surgery -------------------------------------------------------------------

def restrict(e: CwExpr, keep: Iterable[Vertex]) -> CwExpr:
    """Expression for the subgraph induced by ``keep``; never uses new labels."""
    keep = frozenset(keep)
    unknown = keep - set(created_vertices(e))
    if unknown:
        raise PreconditionError(f"unknown vertex ids: {sorted(map(str, unknown))}")
    if not keep:
        raise PreconditionError("cannot restrict to the empty vertex set")

    # each result is (expr or None, labels present)
    def step(node, kids):
        if isinstance(node, Create):
            if node.vertex in keep:
                return node, frozenset((node.label,))
            return None, frozenset()
        if isinstance(node, Union):
            (a, la), (b, lb) = kids
            if a is None:
                return b, lb
            if b is None:
                return a, la
            return Union(a, b), la | lb
        child, present = kids[0]
        if child is None:
            return None, present
        if isinstance(node, Join):
            if node.i in present and node.j in present:
                return Join(node.i, node.j, child), present
            return child, present
        if node.i not in present:
            return child, present
        return Relabel(node.i, node.j, child), (present - {node.i}) | {node.j}

    return fold(e, step)[0]


def rename_vertices(e: CwExpr, mapping: Dict[Vertex, Vertex]) -> CwExpr:
    def step(node, kids):
        if isinstance(node, Create):
            return Create(node.label, mapping.get(node.vertex, node.vertex))
        if isinstance(node, Union):
            return Union(*kids)
        return type(node)(node.i, node.j, kids[0])

    return fold(e, step)


def map_labels(e: CwExpr, fn: Callable[[int], int]) -> CwExpr:
    def step(node, kids):
        if isinstance(node, Create):
            return Create(fn(node.label), node.vertex)
        if isinstance(node, Union):
            return Union(*kids)
        return type(node)(fn(node.i), fn(node.j), kids[0])

    return fold(e, step)


def union_all(exprs: List[CwExpr]) -> CwExpr:
    """Balanced disjoint union, keeps the tree shallow."""
    if not exprs:
        raise PreconditionError("nothing to unite")
    layer = list(exprs)
    while len(layer) > 1:
        layer = [Union(layer[i], layer[i + 1]) if i + 1 < len(layer) else layer[i] for i in range(0, len(layer), 2)]
    return layer[0]


def path_expression(vertices: List[Vertex]) -> CwExpr:
    """Three-label expression for the path through ``vertices`` in order.

    Same scheme as the classic P_5 construction: the newest vertex carries
    label 3, its predecessor 2, everything older 1.
    """
    if not vertices:
        raise PreconditionError("empty path")
    if len(vertices) == 1:
        return Create(1, vertices[0])
    e = Join(2, 1, Union(Create(2, vertices[1]), Create(1, vertices[0])))
    for n, v in enumerate(vertices[2:]):
        if n:
            e = Relabel(3, 2, Relabel(2, 1, e))
        e = Join(3, 2, Union(Create(3, v), e))
    return e


P5_TEXT = (
    "eta(3,2, union(create(3,e), rho(3,2, rho(2,1, eta(3,2, union(create(3,d), "
    "rho(3,2, rho(2,1, eta(3,2, union(create(3,c), eta(2,1, union(create(2,b), create(1,a)))))))))))))"
)


# -- composition over a vertex partition ----------------------------------------

@dataclass
class PartScheme:
    """Ordered parts of ``host`` with one expression per part."""

    host: Graph
    parts: List[FrozenSet[Vertex]]
    part_exprs: List[CwExpr]


@dataclass
class CompositionReport:
    k: int
    l: int
    part_widths: List[int]
    part_mu: List[int]
    prefix_mu: List[int]
    width: int


def _ordered_classes(host: Graph, part) -> List[FrozenSet[Vertex]]:
    sim = similarity_classes(host, part)
    keyed = sorted(zip(sim.signatures, sim.classes), key=lambda sc: sorted(host.index(v) for v in sc[0]))
    return [cls for _, cls in keyed]


def compose_partition(scheme: PartScheme, k: Optional[int] = None, l: Optional[int] = None,
                      report: Optional[list] = None) -> CwExpr:
    """Assemble one expression for ``scheme.host`` from the per-part expressions.

    Every label lies in 1..k*l where k = max(2, part widths) and l bounds the
    similarity-class counts of each part and of each prefix union. Passing
    ``k``/``l`` turns them into checked preconditions.
    """
    host, parts, exprs = scheme.host, [frozenset(p) for p in scheme.parts], scheme.part_exprs
    if len(parts) != len(exprs) or not parts:
        raise PreconditionError("need one expression per part and at least one part")
    covered = set()
    for p in parts:
        if not p or covered & p:
            raise PreconditionError("parts must be nonempty and pairwise disjoint")
        covered |= p
    if covered != set(host.vertices):
        raise PreconditionError("parts do not cover the host graph")

    widths = []
    for p, e in zip(parts, exprs):
        got = evaluate(e).graph
        if got != induced_subgraph(host, p):
            raise PreconditionError("a part expression does not evaluate to its induced subgraph")
        widths.append(width(e))
    part_classes = [_ordered_classes(host, p) for p in parts]
    prefix_classes = []
    acc = frozenset()
    for p in parts:
        acc = acc | p
        prefix_classes.append(_ordered_classes(host, acc))
    need_l = max(max(len(c) for c in part_classes), max(len(c) for c in prefix_classes))
    need_k = max(2, max(widths))
    if k is not None:
        if max(widths) > k:
            raise PreconditionError(f"a part expression uses {max(widths)} labels, more than k={k}")
        need_k = max(2, k)
    if l is not None:
        if need_l > l:
            raise PreconditionError(f"similarity classes reach {need_l}, more than l={l}")
        need_l = l
    k, l = need_k, need_l
    budget = k * l

    acc_expr = None
    acc_labels: Dict[int, FrozenSet[Vertex]] = {}  # label -> class of the prefix
    for idx, (p, e, classes) in enumerate(zip(parts, exprs, part_classes)):
        forbidden = set(acc_labels)
        free = [x for x in range(1, budget + 1) if x not in forbidden]
        final = free[: len(classes)]
        rest = iter([x for x in range(1, budget + 1) if x not in set(final)])
        local = sorted(labels_used(e))
        slot = {}
        for c in range(len(classes)):
            slot[(c, local[0])] = final[c]
            for a in local[1:]:
                slot[(c, a)] = next(rest)
        cls_of = {v: c for c, cls in enumerate(classes) for v in cls}
        part_expr = _split_by_class(e, cls_of, len(classes), slot)
        for c in range(len(classes)):
            for a in local[1:]:
                part_expr = Relabel(slot[(c, a)], final[c], part_expr)
        # remove no-op relabels of labels that never appear
        part_expr = restrict(part_expr, p)
        part_labels = {final[c]: cls for c, cls in enumerate(classes)}
        if acc_expr is None:
            combined, labels_now = part_expr, part_labels
        else:
            combined = Union(acc_expr, part_expr)
            for la, ca in sorted(acc_labels.items()):
                for lb, cb in sorted(part_labels.items()):
                    u, v = next(iter(ca)), next(iter(cb))
                    adjacent = host.has_edge(u, v)
                    for x in ca:
                        for y in cb:
                            if host.has_edge(x, y) != adjacent:
                                raise VerificationError("cross-class adjacency is not uniform")
                    if adjacent:
                        combined = Join(la, lb, combined)
            labels_now = dict(acc_labels)
            labels_now.update(part_labels)
        # merge labels whose classes coincide in the new prefix
        target = {}
        for new_cls in prefix_classes[idx]:
            members = sorted(lab for lab, cls in labels_now.items() if cls <= new_cls)
            for lab in members[1:]:
                combined = Relabel(lab, members[0], combined)
            target[members[0]] = new_cls
        acc_expr, acc_labels = combined, target

    used = width(acc_expr)
    if report is not None:
        report.append(CompositionReport(k, l, widths, [len(c) for c in part_classes],
                                        [len(c) for c in prefix_classes], used))
    if max(labels_used(acc_expr)) > budget:
        raise VerificationError(f"composition used label {max(labels_used(acc_expr))} beyond k*l={budget}")
    return acc_expr


def _split_by_class(e: CwExpr, cls_of, n_classes: int, slot) -> CwExpr:
    """Rewrite a part expression so vertices of different classes never share a label."""

    def step(node, kids):
        if isinstance(node, Create):
            return Create(slot[(cls_of[node.vertex], node.label)], node.vertex)
        if isinstance(node, Union):
            return Union(*kids)
        out = kids[0]
        if isinstance(node, Join):
            for c1 in range(n_classes):
                for c2 in range(n_classes):
                    out = Join(slot[(c1, node.i)], slot[(c2, node.j)], out)
            return out
        for c in range(n_classes):
            out = Relabel(slot[(c, node.i)], slot[(c, node.j)], out)
        return out

    return fold(e, step)
