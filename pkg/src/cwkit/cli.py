"""Command-line entry point: ``cwkit <subcommand> ...``.

Primary output goes to ``-o FILE`` (stdout by default). ``--manifest FILE``
records what ran and what was verified; with ``-o`` the manifest defaults to
``FILE.manifest.json``. Exit codes: 0 ok, 2 parse, 3 precondition,
4 verification, 5 size cap.
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from .canonical import format_embedding, generate_h, row_layers
from .cochain import check_cochain, clusters
from .decomposition import (SynthesisReport, build_BG, forbidden_to_k, free_corpus, synthesize,
                            width_bound)
from .embedding import embed_universal
from .errors import CwkitError, NotUnitIntervalError, ParseError, VerificationError
from .expr import evaluate, parse, render, width
from .graph import Graph, connected_components, format_graph, induced_subgraph, parse_graph, to_dot
from .oracle import oracle_cliquewidth
from .uig import (CanonicalPartition, build_model_any, canonical_partition, format_model,
                  layer_offsets, normalized_orders, random_uig)

EXIT_CODES = {"parse": 2, "precondition": 3, "verification": 4, "size-cap": 5}


class Run:
    """Collects the manifest of one invocation."""

    def __init__(self, args):
        self.args = args
        self.started = time.perf_counter()
        self.manifest = {
            "command": args.command,
            "inputs": [],
            "seed": getattr(args, "seed", None),
            "k": getattr(args, "k", None),
            "outputs": [],
            "verification": {},
            "widths": {},
        }

    def read(self, path: str) -> str:
        self.manifest["inputs"].append(path)
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None

    def graph(self, path: str) -> Graph:
        return parse_graph(self.read(path))

    def emit(self, text: str):
        out = self.args.out
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
            self.manifest["outputs"].append(out)
        else:
            sys.stdout.write(text)

    def dot(self, text: str):
        if self.args.dot:
            with open(self.args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
            self.manifest["outputs"].append(self.args.dot)

    def verified(self, name: str, ok: bool, witness=None):
        self.manifest["verification"][name] = {"result": "pass" if ok else "fail", "witness": witness}

    def finish(self, status: int, error: Optional[CwkitError] = None):
        if error is not None:
            self.manifest["error"] = {"category": error.category, "message": str(error)}
        self.manifest["status"] = status
        self.manifest["timing"] = {"seconds": round(time.perf_counter() - self.started, 6)}
        path = self.args.manifest or (self.args.out + ".manifest.json" if self.args.out else None)
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(self.manifest, fh, indent=2, sort_keys=True, default=str)
                fh.write("\n")


# -- subcommands ---------------------------------------------------------------

def _layerings(g: Graph):
    out = []
    for comp in connected_components(g):
        sub = induced_subgraph(g, comp)
        cp = canonical_partition(sub)
        off = layer_offsets(sub, cp)
        orders = [sorted(q, key=off.__getitem__) for q in normalized_orders(sub, cp)]
        out.append((sub, CanonicalPartition(orders)))
    return out


def cmd_gen_h(run: Run):
    a = run.args
    h = generate_h(a.n, a.m)
    run.emit(format_graph(h))
    run.dot(to_dot(h, f"H_{a.n}_{a.m}", row_layers(a.n, a.m)))


def cmd_recognize(run: Run):
    g = run.graph(run.args.graph)
    try:
        parts = _layerings(g)
    except NotUnitIntervalError as exc:
        run.verified("unit_interval", False, str(exc))
        run.emit(f"result no\nreason {exc}\n")
        return
    run.verified("unit_interval", True)
    lines = ["result yes"]
    ranks = []
    for c, (sub, cp) in enumerate(parts):
        for j, q in enumerate(cp.order_in_layer):
            lines.append(f"layer {c} {j} " + " ".join(map(str, q)))
            ranks.append(q)
    run.emit("\n".join(lines) + "\n")
    run.dot(to_dot(g, "layers", ranks))


def cmd_model(run: Run):
    g = run.graph(run.args.graph)
    run.emit(format_model(build_model_any(g)))


def cmd_clusters(run: Run):
    g = run.graph(run.args.graph)
    lines = []
    for c, (sub, cp) in enumerate(_layerings(g)):
        orders = cp.order_in_layer
        for h in range(1, len(orders)):
            upper, lower = orders[h - 1], orders[h]
            part = clusters(check_cochain(induced_subgraph(sub, upper + lower), upper, lower,
                                          order1=upper, order2=lower))
            for p, cl in enumerate(part.clusters, 1):
                lines.append(f"cluster {c} {h} {p} upper " + " ".join(map(str, cl.upper))
                             + " lower " + " ".join(map(str, cl.lower)))
            if part.trivial1:
                lines.append(f"trivial {c} {h} upper " + " ".join(map(str, part.trivial1)))
            if part.trivial2:
                lines.append(f"trivial {c} {h} lower " + " ".join(map(str, part.trivial2)))
    run.emit("\n".join(lines) + ("\n" if lines else ""))


def cmd_bg(run: Run):
    g = run.graph(run.args.graph)
    lines, node_ids, node_edges, ranks = [], [], [], []
    for c, (sub, cp) in enumerate(_layerings(g)):
        bg = build_BG(sub, cp, allow_trivial=True)
        name = lambda x: f"c{c}L{x[0]}P{x[1]}"
        for level in bg.levels:
            ranks.append([name(x) for x in level])
            for x in level:
                node_ids.append(name(x))
                lines.append(f"node {name(x)} " + " ".join(map(str, sorted(bg.node_members[x], key=sub.index))))
        for v, (up, down) in bg.edge_of.items():
            lines.append(f"edge {v} {name(up) if up else '-'} {name(down) if down else '-'}")
            if up and down:
                node_edges.append((name(up), name(down)))
    run.emit("\n".join(lines) + "\n")
    run.dot(to_dot(Graph(node_ids, sorted(set(node_edges))), "B", ranks))


def cmd_embed(run: Run):
    g = run.graph(run.args.graph)
    emb = embed_universal(g)
    run.verified("embedding", True)
    run.emit(format_embedding(emb))


def _synth(run: Run, g: Graph, k: int):
    rep = SynthesisReport(k, len(g))
    e = synthesize(g, k, rep)
    run.verified("eval_equals_input", True)
    run.verified("width_within_bound", rep.width <= rep.bound)
    run.manifest["widths"] = {"measured": rep.width, "bound": rep.bound}
    run.manifest["report"] = {"twins_collapsed": rep.twins_collapsed, "components": rep.components}
    return e


def cmd_synth(run: Run):
    a = run.args
    g = run.graph(a.graph)
    if a.forbid:
        k = forbidden_to_k(run.graph(a.forbid))
        run.manifest["k"] = k
    elif a.k is not None:
        k = a.k
    else:
        raise ParseError("synth needs --k or --forbid")
    run.emit(render(_synth(run, g, k)) + "\n")


def cmd_eval(run: Run):
    e = parse(run.read(run.args.expr))
    lg = evaluate(e)
    text = format_graph(lg.graph)
    text += "".join(f"# label {v} {lg.label_of[v]}\n" for v in lg.graph.vertices)
    run.emit(text)
    run.dot(to_dot(lg.graph, "expr"))


def cmd_width(run: Run):
    e = parse(run.read(run.args.expr))
    w = width(e)
    run.manifest["widths"] = {"measured": w}
    run.emit(f"{w}\n")


def cmd_oracle(run: Run):
    g = run.graph(run.args.graph)
    cw = oracle_cliquewidth(g)
    run.manifest["widths"] = {"oracle": cw}
    run.emit(f"{cw}\n")


def cmd_random_uig(run: Run):
    a = run.args
    g = random_uig(a.n, Fraction(a.spread), a.seed)
    run.emit(format_graph(g))
    run.dot(to_dot(g, "uig"))


def cmd_verify(run: Run):
    g = run.graph(run.args.graph)
    e = parse(run.read(run.args.expr))
    got = evaluate(e).graph
    ok = got == g
    witness = None
    if not ok:
        missing = sorted(map(str, set(g.vertices) ^ set(got.vertices)))
        if missing:
            witness = f"vertex sets differ on {missing[:5]}"
        else:
            diff = sorted(set(map(frozenset, g.edges())) ^ set(map(frozenset, got.edges())), key=lambda p: sorted(map(str, p)))
            witness = "edge sets differ on " + ", ".join("-".join(sorted(map(str, p))) for p in diff[:5])
    run.verified("eval_equals_graph", ok, witness)
    run.manifest["widths"] = {"measured": width(e)}
    run.emit(f"{'pass' if ok else 'fail'} width {width(e)}" + (f" {witness}" if witness else "") + "\n")
    if not ok:
        raise VerificationError(witness)


def cmd_corpus(run: Run):
    a = run.args
    graphs = free_corpus(a.k, a.count, a.seed, max_n=a.max_n)
    lines = []
    widths = []
    failures = 0
    for i, g in enumerate(graphs):
        try:
            e = synthesize(g, a.k)
            w = width(e)
            widths.append(w)
            lines.append(f"graph {i} n {len(g)} width {w} pass")
            if a.outdir:
                os.makedirs(a.outdir, exist_ok=True)
                for suffix, text in (("graph", format_graph(g)), ("cwx", render(e) + "\n")):
                    path = os.path.join(a.outdir, f"g{i:04d}.{suffix}")
                    with open(path, "w", encoding="utf-8") as fh:
                        fh.write(text)
                    run.manifest["outputs"].append(path)
        except CwkitError as exc:
            failures += 1
            lines.append(f"graph {i} n {len(g)} fail {exc.category}: {exc}")
    bound = width_bound(a.k)
    lines.append(f"summary count {len(graphs)} failures {failures} max_width {max(widths, default=0)} bound {bound}")
    run.verified("corpus", failures == 0, None if not failures else f"{failures} failures")
    run.manifest["widths"] = {"per_graph": widths, "bound": bound}
    run.emit("\n".join(lines) + "\n")
    if failures:
        raise VerificationError(f"{failures} corpus graphs failed")


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--out", help="write the primary output here instead of stdout")
    common.add_argument("--manifest", help="write the run manifest (JSON) here")
    common.add_argument("--dot", help="write a DOT rendering here (where applicable)")

    p = argparse.ArgumentParser(prog="cwkit", description="Unit interval graphs and clique-width expressions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("gen-h", cmd_gen_h, "generate the canonical graph H_{n,m}")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    add("recognize", cmd_recognize, "canonical partition or a reason for rejection").add_argument("graph")
    add("model", cmd_model, "unit interval model with rational left ends").add_argument("graph")
    add("clusters", cmd_clusters, "clusters of every consecutive-layer co-chain graph").add_argument("graph")
    add("bg", cmd_bg, "the cluster graph B(G)").add_argument("graph")
    add("embed", cmd_embed, "embedding into H_{n,n}").add_argument("graph")
    sp = add("synth", cmd_synth, "clique-width expression for an H_{k,k}-free unit interval graph")
    sp.add_argument("graph")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--forbid", metavar="F.graph", help="derive k from a forbidden unit interval graph")
    add("eval", cmd_eval, "evaluate an expression to its graph").add_argument("expr")
    add("width", cmd_width, "number of labels an expression uses").add_argument("expr")
    add("oracle", cmd_oracle, "exact clique-width of a small graph").add_argument("graph")
    sp = add("random-uig", cmd_random_uig, "seeded random unit interval graph")
    sp.add_argument("n", type=int)
    sp.add_argument("spread")
    sp.add_argument("seed", type=int)
    sp = add("verify", cmd_verify, "check that an expression evaluates to a graph")
    sp.add_argument("graph")
    sp.add_argument("expr")
    sp = add("corpus", cmd_corpus, "synthesise and verify a seeded H_{k,k}-free corpus")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=60)
    sp.add_argument("--outdir")
    return p


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    r = Run(args)
    try:
        args.fn(r)
    except CwkitError as exc:
        code = EXIT_CODES.get(exc.category, 1)
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        r.finish(code, exc)
        return code
    except ValueError as exc:
        err = ParseError(str(exc))
        print(f"error: parse: {err}", file=sys.stderr)
        r.finish(2, err)
        return 2
    r.finish(0)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
