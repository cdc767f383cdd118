"""Command-line front end.

Graphs are read from a file argument or stdin, as an edge list (`u v` per
line, optional `p <n>` header, `#` comments, a lone integer declares an
isolated vertex) or as JSON (`{"vertices": [...], "edges": [[u, v], ...]}`).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import generators, tetra
from .connectivity import is_k_connected
from .decomposition import build_decomposition, relabel_decomposition, decomposition_signature
from .errors import CapabilityError, InputError, InvariantError, TetraError
from .graph import Graph, apply_relabeling, complete_graph, cycle_graph, path_graph
from .pipeline import full_pipeline, tri_decompose, verify_tri_class, ydelta
from .recognizers import classify_4_angry, classify_torso, verify_torso_class
from .separations import corner_diagram, crossing_classification, separator_of

EXIT_OK, EXIT_INPUT, EXIT_CAPABILITY, EXIT_INVARIANT = 0, 2, 3, 4


# -- graph I/O -----------------------------------------------------------------------

def parse_edgelist(text: str) -> Graph:
    vertices: set[int] = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if len(parts) != 2:
                    raise ValueError
                vertices |= set(range(int(parts[1])))
            elif len(parts) == 1:
                vertices.add(int(parts[0]))
            elif len(parts) == 2:
                u, v = int(parts[0]), int(parts[1])
                edges.append((u, v))
                vertices |= {u, v}
            else:
                raise ValueError
        except ValueError:
            raise InputError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
    return Graph(vertices, edges)


def parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph(data.get("vertices", []) + [v for e in data["edges"] for v in e],
                     [tuple(e) for e in data["edges"]])
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"invalid JSON graph: {exc}") from None


def read_graph(text: str, fmt: str = "auto") -> Graph:
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "edgelist"
    if fmt == "json":
        return parse_json(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise InputError(f"unknown format {fmt!r}")


def to_edgelist(g: Graph) -> str:
    lines = []
    if g.vertices == tuple(range(len(g))):
        lines.append(f"p {len(g)}")
    else:
        lines += [str(v) for v in g.vertices if g.degree(v) == 0]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_json(g: Graph) -> str:
    return json.dumps(graph_dict(g)) + "\n"


def graph_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


# -- reports --------------------------------------------------------------------------

def _sep_dict(g: Graph, s) -> dict:
    sep = separator_of(g, s)
    return {"A": sorted(s.a), "B": sorted(s.b),
            "separatorVertices": sorted(sep.cut_vertices),
            "separatorEdges": [list(e) for e in sep.cross_edges]}


def _sep_text(g: Graph, s) -> str:
    sep = separator_of(g, s)
    cut = ",".join(map(str, sorted(sep.cut_vertices)))
    es = ",".join(f"{a}-{b}" for a, b in sep.cross_edges)
    return f"A-B={sorted(s.strict_a)} B-A={sorted(s.strict_b)} vertices={{{cut}}} edges={{{es}}}"


def decomposition_report(g: Graph, tree, classes) -> dict:
    nodes = []
    for i, (bag, tc) in enumerate(zip(tree.bags, classes)):
        nodes.append({"id": i, "bag": sorted(bag), "torso": graph_dict(tc.torso.torso), "class": tc.summary()})
    edges = []
    for (i, j), s in sorted(tree.edge_map.items()):
        if i < j:
            sep = separator_of(g, s)
            edges.append({"from": i, "to": j, "separatorVertices": sorted(sep.cut_vertices),
                          "separatorEdges": [list(e) for e in sep.cross_edges]})
    return {"nodes": nodes, "edges": edges}


def _class_text(c: dict) -> str:
    extra = " ".join(f"{k}={v}" for k, v in c.items() if k != "verdict")
    return f"{c['verdict']} {extra}".strip()


def _decomposition_text(report: dict) -> str:
    n = len(report["nodes"])
    lines = [f"{n} node{'s' if n != 1 else ''}"]
    for node in report["nodes"]:
        lines.append(f"node {node['id']}: bag {node['bag']} verdict {_class_text(node['class'])}")
    for e in report["edges"]:
        lines.append(f"edge {e['from']}-{e['to']}: vertices {e['separatorVertices']} edges {e['separatorEdges']}")
    return "\n".join(lines) + "\n"


def _decomposition_dot(report: dict) -> str:
    lines = ["graph decomposition {"]
    for node in report["nodes"]:
        label = f"{node['id']}\\n|bag|={len(node['bag'])}\\n{_class_text(node['class'])}"
        lines.append(f'  n{node["id"]} [label="{label}"];')
    for e in report["edges"]:
        order = len(e["separatorVertices"]) + len(e["separatorEdges"])
        lines.append(f'  n{e["from"]} -- n{e["to"]} [label="{order}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_decomposition(report: dict, out: str) -> str:
    if out == "json":
        return json.dumps(report) + "\n"
    if out == "dot":
        return _decomposition_dot(report)
    return _decomposition_text(report)


# -- subcommands -----------------------------------------------------------------------

def cmd_tetra(args, g: Graph) -> str:
    if args.action == "enumerate":
        seps = tetra.enumerate_tetra_separations(g)
        label = "tetra-separations"
    else:
        seps = tetra.totally_nested_set(g, args.method)
        label = "totally-nested tetra-separations"
    if args.out == "json":
        return json.dumps({"count": len(seps), "separations": [_sep_dict(g, s) for s in seps]}) + "\n"
    lines = [f"{len(seps)} {label}"] + [_sep_text(g, s) for s in seps]
    return "\n".join(lines) + "\n"


def cmd_decompose(args, g: Graph) -> str:
    if not is_k_connected(g, 4):
        raise InputError("decompose needs a 4-connected graph (use pipeline for others)")
    nested = tetra.totally_nested_set(g, args.method)
    tetras = tetra.enumerate_tetra_separations(g)
    tree = build_decomposition(g, nested)
    classes = [classify_torso(g, star, nested, tetras) for star in tree.stars]
    return _emit_decomposition(decomposition_report(g, tree, classes), args.out)


def cmd_tri_decompose(args, g: Graph) -> str:
    dec = tri_decompose(g)
    return _emit_decomposition(decomposition_report(g, dec.tree, dec.classes), args.out)


def cmd_pipeline(args, g: Graph) -> str:
    report = full_pipeline(g).to_dict()
    if args.out == "json":
        return json.dumps(report) + "\n"
    lines = []

    def walk(node, depth):
        info = node["info"]
        desc = ""
        if "class" in info:
            desc = _class_text(info["class"])
        elif "kind" in info:
            desc = info["kind"]
        if "outcome" in info:
            desc = (desc + " " + info["outcome"]).strip()
        lines.append(f"{'  ' * depth}{node['stage']} |V|={len(node['vertices'])} |E|={len(node['edges'])} {desc}".rstrip())
        for c in node["children"]:
            walk(c, depth + 1)

    walk(report, 0)
    return "\n".join(lines) + "\n"


def cmd_classify_angry(args, g: Graph) -> str:
    v = classify_4_angry(g)
    if args.out == "json":
        data = {"angry": v.angry, "shape": v.shape, "shapes": v.shapes}
        if not v.angry:
            data["totallyNested"] = _sep_dict(g, v.witnesses["totally_nested"])
        return json.dumps(data) + "\n"
    if not v.angry:
        return f"not 4-angry; totally-nested witness {_sep_text(g, v.witnesses['totally_nested'])}\n"
    return f"4-angry shape {v.shape} (matching shapes: {', '.join(map(str, v.shapes))})\n"


def cmd_ydelta(args, g: Graph) -> str:
    return _write_graph(ydelta(g).result, args.out)


def _write_graph(g: Graph, out: str) -> str:
    return to_json(g) if out == "json" else to_edgelist(g)


def cmd_check(args, g: Graph) -> str:
    """Run the invariant checks that apply to g; raises InvariantError on the first failure."""
    lines = []
    if is_k_connected(g, 4):
        nested = tetra.totally_nested_set(g, "both")
        lines.append(f"ok nestedness: oracle and external 5-connectivity agree ({len(nested)} totally-nested)")
        tetras = tetra.enumerate_tetra_separations(g)
        partners = tetra.crossing_partners(g, tetras)
        pairs = 0
        for s, crossing in partners.items():
            for t in crossing:
                if s.sort_key() < t.sort_key():
                    crossing_classification(corner_diagram(g, s, t))
                    pairs += 1
        lines.append(f"ok crossing lemma on {pairs} crossing pairs")
        tree = build_decomposition(g, nested)
        for star in tree.stars:
            tc = classify_torso(g, star, nested, tetras)
            problems = verify_torso_class(tc)
            tau = tc.torso.torso
            if not (is_k_connected(tau, 4) or (len(tau) == 4 and tau.size() == 6)):
                problems.append("torso is neither 4-connected nor K4")
            if problems:
                raise InvariantError("; ".join(problems))
        lines.append(f"ok torso classification on {len(tree.stars)} nodes")
        rng = random.Random(args.seed)
        perm = list(g.vertices)
        rng.shuffle(perm)
        mapping = dict(zip(g.vertices, perm))
        h = apply_relabeling(g, mapping)
        if set(tetra.totally_nested_set(h)) != {s.relabel(mapping) for s in nested}:
            raise InvariantError("totally-nested set is not canonical under relabeling")
        if decomposition_signature(build_decomposition(h, tetra.totally_nested_set(h))) != relabel_decomposition(tree, mapping):
            raise InvariantError("decomposition is not canonical under relabeling")
        lines.append(f"ok canonicity under relabeling (seed {args.seed})")
    elif is_k_connected(g, 3):
        dec = tri_decompose(g)
        for tc in dec.classes:
            problems = verify_tri_class(g, tc)
            if problems:
                raise InvariantError("; ".join(problems))
        lines.append(f"ok strict tri-separation decomposition on {len(dec.classes)} nodes")
    else:
        full_pipeline(g)
        lines.append("ok pipeline")
    return "\n".join(lines) + "\n"


FAMILIES = {
    "saw": (generators.circular_saw, [int, int], "n k"),
    "double-wheel": (generators.double_wheel, [int], "rim"),
    "double-wheel-triangles": (generators.double_wheel_of_triangles, [int], "rim"),
    "wheel": (generators.wheel, [int], "rim"),
    "k4m": (generators.k4m, [str, int], "pure|thickened|sprinkled m [a-b ...]"),
    "k3m": (generators.k3m, [str, int], "pure|thickened|sprinkled m [a-b ...]"),
    "gdw": (generators.generalised_double_wheel, [], "K2|T ..."),
    "complete": (complete_graph, [int], "n"),
    "cycle": (cycle_graph, [int], "n"),
    "path": (path_graph, [int], "n"),
    "random4": (generators.random_4_connected, [int], "n"),
    "random3": (generators.random_3_connected, [int], "n"),
}


def cmd_gen(args) -> str:
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {', '.join(sorted(FAMILIES))}")
    fn, types, usage = FAMILIES[args.family]
    params = list(args.params)
    try:
        if args.family == "gdw":
            g = fn(params, args.hub_edge)
        elif args.family in ("k4m", "k3m"):
            kind, m = params[0], int(params[1])
            left = [tuple(int(x) for x in p.split("-")) for p in params[2:]]
            g = fn(kind, m, left)
        elif args.family in ("random4", "random3"):
            g = fn(int(params[0]), args.seed)
        elif args.family in ("double-wheel", "double-wheel-triangles"):
            g = fn(int(params[0]), args.hub_edge)
        else:
            if len(params) != len(types):
                raise ValueError
            g = fn(*(t(p) for t, p in zip(types, params)))
    except InputError:
        raise
    except (ValueError, IndexError):
        raise InputError(f"usage: gen {args.family} {usage}") from None
    return _write_graph(g, args.out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["auto", "edgelist", "json"], default="auto", help="input format")
    common.add_argument("--out", choices=["text", "json", "dot"], default="text", help="output format")
    common.add_argument("--bound", type=int, default=None, help="vertex cap for tetra-separation enumeration")
    common.add_argument("--method", choices=["oracle", "characterization", "both"], default="oracle",
                        help="total-nestedness test")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker cap (engines are sequential)")

    parser = argparse.ArgumentParser(prog="tetradecomp", description="Tetra-separation decompositions of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("tetra", parents=[common], help="tetra-separations of a 4-connected graph")
    p.add_argument("action", choices=["enumerate", "nested"])
    p.add_argument("input", nargs="?")
    for name, helptext in [("decompose", "decomposition of a 4-connected graph with torso classes"),
                           ("tri-decompose", "strict tri-separation decomposition of a 3-connected graph"),
                           ("pipeline", "full staged decomposition of any graph"),
                           ("classify-angry", "4-angry test and shape"),
                           ("ydelta", "the canonical Y-Delta operation"),
                           ("check", "run the invariant checks on a graph")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", nargs="?")
    p = sub.add_parser("gen", parents=[common], help="generate a named graph family")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--hub-edge", action="store_true")
    return parser


COMMANDS = {
    "tetra": cmd_tetra,
    "decompose": cmd_decompose,
    "tri-decompose": cmd_tri_decompose,
    "pipeline": cmd_pipeline,
    "classify-angry": cmd_classify_angry,
    "ydelta": cmd_ydelta,
    "check": cmd_check,
}


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be at least 1", file=stderr)
        return EXIT_INPUT
    saved = tetra.MAX_VERTICES
    if args.bound is not None:
        tetra.MAX_VERTICES = args.bound
    try:
        if args.command == "gen":
            text = cmd_gen(args)
        else:
            if args.input:
                try:
                    with open(args.input) as fh:
                        raw = fh.read()
                except OSError as exc:
                    raise InputError(str(exc)) from None
            else:
                raw = stdin.read()
            g = read_graph(raw, args.format)
            text = COMMANDS[args.command](args, g)
    except InputError as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"capability bound exceeded: {exc}", file=stderr)
        return EXIT_CAPABILITY
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=stderr)
        return EXIT_INVARIANT
    except TetraError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVARIANT
    finally:
        tetra.MAX_VERTICES = saved
    stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
