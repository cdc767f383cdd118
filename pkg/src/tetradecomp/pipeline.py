"""Lower-connectivity stages and the combined decomposition pipeline.

Components, blocks, the Tutte decomposition, strict tri-separations (through
an apex vertex), the Y-Delta operation, and the pipeline that chains them
into the tetra-separation decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .connectivity import is_k_connected, is_quasi_k_connected
from .decomposition import (
    MixedTreeDecomposition,
    TorsoResult,
    build_decomposition,
    compressed_torso,
    expanded_torso,
    splitting_stars,
)
from .errors import CapabilityError, InputError, InvariantError
from .graph import Graph, components, delete_vertices, edge, induced_subgraph
from .recognizers import (
    SPRINKLED,
    THICKENED,
    QUASI5,
    DOUBLE_WHEEL,
    classify_torso,
    recognize_k3m,
    rim_ring,
)
from .separations import MixedSeparation, is_nested, separator_of
from .tetra import enumerate_tetra_separations, left_right_reduction, totally_nested_set

MAX_SPLIT_COMPONENTS = 10


# -- blocks --------------------------------------------------------------------

@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple          # frozensets of vertices, sorted by least vertex
    cut_vertices: tuple
    tree_edges: tuple      # (block index, cut vertex)

    def block_graph(self, g: Graph, i: int) -> Graph:
        return induced_subgraph(g, self.blocks[i])


def block_cut_decomposition(g: Graph) -> BlockCutTree:
    """Blocks (maximal 2-connected subgraphs and bridges) and cut vertices of a connected graph."""
    if len(g) == 0 or len(components(g)) != 1:
        raise InputError("block-cutvertex decomposition needs a connected graph")
    if len(g) == 1:
        return BlockCutTree((frozenset(g.vertices),), (), ())
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks = []
    cuts = set()
    root = g.vertices[0]
    disc[root] = low[root] = 0
    counter = 1
    edge_stack: list[tuple[int, int]] = []
    stack = [(root, None, iter(sorted(g.neighbours(root))))]
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(sorted(g.neighbours(w)))))
                if v == root:
                    root_children += 1
                advanced = True
                break
            if disc[w] < disc[v]:
                low[v] = min(low[v], disc[w])
                edge_stack.append((v, w))
        if advanced:
            continue
        stack.pop()
        if parent is None:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent != root:
                cuts.add(parent)
            block = set()
            while True:
                a, b = edge_stack.pop()
                block |= {a, b}
                if (a, b) == (parent, v):
                    break
            blocks.append(frozenset(block))
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=lambda b: sorted(b))
    tree_edges = tuple((i, c) for i, b in enumerate(blocks) for c in sorted(cuts) if c in b)
    return BlockCutTree(tuple(blocks), tuple(sorted(cuts)), tree_edges)


# -- Tutte decomposition ---------------------------------------------------------

def two_separations(g: Graph, max_components: int = MAX_SPLIT_COMPONENTS) -> list[MixedSeparation]:
    """All 2-separations (vertex separators of size two, both strict sides non-empty), sorted."""
    out = set()
    for x, y in combinations(g.vertices, 2):
        comps = components(delete_vertices(g, (x, y)))
        if len(comps) < 2:
            continue
        if len(comps) > max_components:
            raise CapabilityError(f"{{{x}, {y}}} leaves {len(comps)} components (max {max_components})")
        for r in range(1, len(comps)):
            for chosen in combinations(range(len(comps)), r):
                a = set().union(*(comps[i] for i in chosen)) | {x, y}
                b = set().union(*(comps[i] for i in range(len(comps)) if i not in chosen)) | {x, y}
                out.add(MixedSeparation(a, b))
    return sorted(out, key=MixedSeparation.sort_key)


def is_half_connected_sep(g: Graph, s: MixedSeparation) -> bool:
    return any(len(components(induced_subgraph(g, side))) == 1 for side in (s.strict_a, s.strict_b))


def totally_nested_two_separations(g: Graph, method: str = "both") -> list[MixedSeparation]:
    """Totally-nested 2-separations by pairwise comparison, by the half-connected test, or both."""
    seps = two_separations(g)

    def oracle():
        return [s for s in seps if all(is_nested(s, t) for t in seps)]

    def characterization():
        return [s for s in seps if is_half_connected_sep(g, s)
                and (is_k_connected(induced_subgraph(g, s.a), 2) or is_k_connected(induced_subgraph(g, s.b), 2))]

    if method == "oracle":
        return oracle()
    if method == "characterization":
        return characterization()
    if method == "both":
        first, second = oracle(), characterization()
        if first != second:
            raise InvariantError("2-separation nestedness: oracle and characterization disagree")
        return first
    raise InputError(f"unknown method {method!r}")


def torso_kind(t: Graph) -> str | None:
    if len(t) == 2 and t.size() == 1:
        return "K2"
    if len(t) >= 3 and t.size() == len(t) and all(t.degree(v) == 2 for v in t.vertices) \
            and len(components(t)) == 1:
        return "cycle"
    if is_k_connected(t, 3):
        return "3-connected"
    return None


@dataclass
class TutteDecomposition:
    graph: Graph
    nested: list
    tree: MixedTreeDecomposition
    torsos: list
    kinds: list


def tutte_decomposition(g: Graph, method: str = "both") -> TutteDecomposition:
    """The Tutte decomposition of a 2-connected graph, with its structural properties checked."""
    if not is_k_connected(g, 2):
        raise InputError("Tutte decomposition needs a 2-connected graph")
    nested = totally_nested_two_separations(g, method)
    tree = build_decomposition(g, nested)
    torsos = [expanded_torso(g, star) for star in tree.stars]
    kinds = [torso_kind(t) for t in torsos]
    for i, k in enumerate(kinds):
        if k is None:
            raise InvariantError(f"Tutte torso {i} is not 3-connected, a cycle or a K2")
    for (i, j), s in tree.edge_map.items():
        if len(s.cut) != 2:
            raise InvariantError("Tutte adhesion set of size other than two")
        if kinds[i] == kinds[j] == "cycle" and not g.has_edge(*sorted(s.cut)):
            raise InvariantError("adhesion between two cycle torsos is not spanned by an edge")
    for i, k in enumerate(kinds):
        if k == "K2":
            nbrs = tree.neighbours(i)
            if len(nbrs) < 3 or any(kinds[j] == "K2" for j in nbrs):
                raise InvariantError("K2 torso violates the neighbour rule")
    return TutteDecomposition(g, nested, tree, torsos, kinds)


# -- strict tri-separations via the apex lift ----------------------------------------

def apex_lift(g: Graph) -> tuple[Graph, int]:
    """g plus a new vertex, labelled one more than the largest label, joined to everything."""
    alpha = (max(g.vertices) + 1) if len(g) else 0
    return Graph(list(g.vertices) + [alpha], list(g.edge_set) + [(v, alpha) for v in g.vertices]), alpha


def strict_tri_failure(g: Graph, s: MixedSeparation) -> str | None:
    """Like tetra_failure, for order three."""
    if not s.is_proper():
        return "proper"
    sep = separator_of(g, s)
    if sep.order != 3:
        return "order"
    for v in sep.cut_vertices:
        nb = g.neighbours(v)
        if len(nb & s.strict_a) < 2 or len(nb & s.strict_b) < 2:
            return "degree"
    ends = [v for e in sep.cross_edges for v in e]
    if len(ends) != len(set(ends)):
        return "matching"
    return None


def _pull_back(s: MixedSeparation, alpha: int) -> MixedSeparation:
    return MixedSeparation(s.a - {alpha}, s.b - {alpha})


def _push(s: MixedSeparation, alpha: int) -> MixedSeparation:
    return MixedSeparation(s.a | {alpha}, s.b | {alpha})


def strict_tri_separations(g: Graph) -> list[MixedSeparation]:
    """All strict tri-separations of a 3-connected graph, from the tetra-separations of its apex lift."""
    if not is_k_connected(g, 3):
        raise InputError("strict tri-separations are computed for 3-connected graphs only")
    lifted, alpha = apex_lift(g)
    out = []
    for s in enumerate_tetra_separations(lifted):
        if alpha not in s.cut:
            raise InvariantError("a tetra-separation of the apex lift avoids the apex")
        out.append(_pull_back(s, alpha))
    return sorted(out, key=MixedSeparation.sort_key)


def totally_nested_strict_tri(g: Graph, method: str = "oracle") -> list[MixedSeparation]:
    lifted, alpha = apex_lift(g)
    return sorted((_pull_back(s, alpha) for s in totally_nested_set(lifted, method)),
                  key=MixedSeparation.sort_key)


QUASI4 = "Quasi4Connected"
WHEEL = "GeneralisedWheel"
THICKENED3 = "ThickenedK3m"
SPRINKLED3 = "SprinkledK3m"


@dataclass
class TriTorsoClass:
    verdict: str
    torso: TorsoResult
    witness: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {"verdict": self.verdict}
        if "centre" in self.witness:
            out["centre"] = self.witness["centre"]
        if "left" in self.witness:
            out["Z"] = list(self.witness["left"])
            out["m"] = self.witness["m"]
        return out


@dataclass
class TriDecomposition:
    graph: Graph
    apex: int
    nested: list
    tree: MixedTreeDecomposition
    classes: list


def _translate(g: Graph, lifted_class, alpha: int, torso: TorsoResult) -> TriTorsoClass:
    v = lifted_class.verdict
    w = lifted_class.witness
    tau = torso.torso
    if v == QUASI5:
        return TriTorsoClass(QUASI4, torso)
    if v == DOUBLE_WHEEL:
        centre = set(w["centre"])
        if alpha not in centre:
            raise InvariantError("double-wheel centre of the lifted torso misses the apex")
        (c,) = centre - {alpha}
        if "rim" in w:
            return TriTorsoClass(WHEEL, torso, {"centre": c, "rim": w["rim"]})
        return TriTorsoClass(WHEEL, torso, {"centre": c, "ring": w["ring"]})
    if v in (THICKENED, SPRINKLED):
        left = set(w["left"])
        if alpha not in left:
            raise InvariantError("K4,m left side of the lifted torso misses the apex")
        left -= {alpha}
        if v == THICKENED:
            wit = recognize_k3m(tau, left)
            if wit is None or wit.kind != "thickened":
                raise InvariantError("torso is not a thickened K3,m")
            return TriTorsoClass(THICKENED3, torso, {"left": wit.left, "m": wit.m})
        wit = recognize_k3m(g, left)
        if wit is None or wit.m < 4:
            raise InvariantError("graph is not a sprinkled K3,m with m >= 4")
        return TriTorsoClass(SPRINKLED3, torso, {"left": wit.left, "m": wit.m})
    raise InvariantError(f"lifted torso classified as {v}, impossible with an apex in every separator")


def verify_tri_class(g: Graph, tc: TriTorsoClass) -> list[str]:
    tau = tc.torso.torso
    w = tc.witness
    problems = []
    if tc.verdict == QUASI4:
        if not is_quasi_k_connected(tau, 4):
            problems.append("torso is not quasi-4-connected")
    elif tc.verdict == WHEEL and "rim" in w:
        if len(tau) != 3 or tau.size() != 3 or {w["centre"], *w["rim"]} != set(tau.vertices):
            problems.append("degenerate wheel is not a triangle split into centre and rim edge")
    elif tc.verdict == WHEEL:
        if not is_k_connected(tau, 3):
            problems.append("torso is not 3-connected")
        if rim_ring(delete_vertices(tau, [w["centre"]])) is None:
            problems.append("torso minus the centre is not a ring of K2's and triangles")
    elif tc.verdict == THICKENED3:
        if recognize_k3m(tau, w["left"]) is None or induced_subgraph(tau, w["left"]).size() != 3:
            problems.append("torso is not a thickened K3,m")
    elif tc.verdict == SPRINKLED3:
        wit = recognize_k3m(g, w["left"])
        if wit is None or wit.m < 4:
            problems.append("graph is not a sprinkled K3,m with m >= 4")
    else:
        problems.append(f"unknown verdict {tc.verdict}")
    return problems


def tri_decompose(g: Graph) -> TriDecomposition:
    """Decomposition of a 3-connected graph along its totally-nested strict tri-separations."""
    if not is_k_connected(g, 3):
        raise InputError("tri_decompose needs a 3-connected graph")
    lifted, alpha = apex_lift(g)
    lifted_nested = totally_nested_set(lifted)
    tetras = enumerate_tetra_separations(lifted)
    nested = sorted((_pull_back(s, alpha) for s in lifted_nested), key=MixedSeparation.sort_key)
    tree = build_decomposition(g, nested)
    classes = []
    for star in tree.stars:
        lifted_star = frozenset(_push(s, alpha) for s in star)
        lifted_class = classify_torso(lifted, lifted_star, lifted_nested, tetras)
        torso = compressed_torso(g, star)
        expected = delete_vertices(lifted_class.torso.torso, [alpha])
        if torso.torso != expected:
            raise InvariantError("torso differs from the lifted torso minus the apex")
        classes.append(_translate(g, lifted_class, alpha, torso))
    return TriDecomposition(g, alpha, nested, tree, classes)


# -- Y-Delta ------------------------------------------------------------------------

@dataclass(frozen=True)
class YDelta:
    source: Graph
    degree_three: frozenset
    subdivided: Graph       # H^s
    triangulated: Graph     # H^{s Delta}
    result: Graph           # H^Delta
    subdivision: dict       # subdivided edge -> new vertex


def ydelta(h: Graph) -> YDelta:
    """Subdivide edges between degree-3 vertices, turn each degree-3 neighbourhood into a triangle, delete U.

    New vertices get labels above the largest existing one, in sorted edge order.
    """
    u_set = frozenset(v for v in h.vertices if h.degree(v) == 3)
    nxt = (max(h.vertices) + 1) if len(h) else 0
    sub = {}
    edges = set()
    for a, b in h.edges:
        if a in u_set and b in u_set:
            sub[(a, b)] = nxt
            edges |= {edge(a, nxt), edge(nxt, b)}
            nxt += 1
        else:
            edges.add((a, b))
    hs = Graph(list(h.vertices) + list(sub.values()), edges)
    tri_edges = set(hs.edge_set)
    for u in sorted(u_set):
        for x, y in combinations(sorted(hs.neighbours(u)), 2):
            tri_edges.add(edge(x, y))
    hsd = Graph(hs.vertices, tri_edges)
    return YDelta(h, u_set, hs, hsd, delete_vertices(hsd, u_set), sub)


# -- Appendix-style refinement check ----------------------------------------------

def is_negligible(s: MixedSeparation) -> bool:
    return len(s.strict_a) <= 1 or len(s.strict_b) <= 1


def trisep_refinement_check(g: Graph, t: MixedSeparation, nested_strict: Sequence[MixedSeparation] | None = None) -> str:
    """For a totally-nested non-trivial tri-separation t: "reduces" if its left-right-reduction is a
    totally-nested strict tri-separation, else "negligible" if t is negligible.

    Raises InvariantError when neither holds.
    """
    if nested_strict is None:
        nested_strict = totally_nested_strict_tri(g)
    reduced = left_right_reduction(g, t)
    if reduced in set(nested_strict):
        return "reduces"
    if is_negligible(t):
        return "negligible"
    raise InvariantError(f"tri-separation {t} neither reduces to a totally-nested strict tri-separation nor is negligible")


# -- full pipeline ----------------------------------------------------------------------

@dataclass
class Stage:
    kind: str
    graph: Graph
    info: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "stage": self.kind,
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.edges],
            "info": self.info,
            "children": [c.to_dict() for c in self.children],
        }


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except CapabilityError as exc:
        raise CapabilityError(f"{name}: {exc}") from exc


def _tetra_stage(x: Graph) -> Stage:
    nested = _stage("tetra", totally_nested_set, x)
    tetras = enumerate_tetra_separations(x)
    tree = _stage("tetra", build_decomposition, x, nested)
    node = Stage("tetra-decomposition", x, {"nested": len(nested), "nodes": len(tree.stars)})
    for star, bag in zip(tree.stars, tree.bags):
        tc = _stage("classify", classify_torso, x, star, nested, tetras)
        node.children.append(Stage("tetra-torso", tc.torso.torso,
                                   {"bag": sorted(bag), "class": tc.summary()}))
    return node


def _tri_stage(x: Graph) -> Stage:
    dec = _stage("tri", tri_decompose, x)
    node = Stage("tri-decomposition", x, {"nested": len(dec.nested), "nodes": len(dec.tree.stars)})
    for tc, bag in zip(dec.classes, dec.tree.bags):
        tau = tc.torso.torso
        child = Stage("tri-torso", tau, {"bag": sorted(bag), "class": tc.summary()})
        if tc.verdict == QUASI4:
            if len(tau) <= 6:
                child.info["outcome"] = "basic"
            else:
                yd = ydelta(tau)
                if not is_k_connected(yd.result, 4):
                    raise InvariantError("Y-Delta of a quasi-4-connected torso on > 6 vertices is not 4-connected")
                yd_node = Stage("ydelta", yd.result, {"degree_three": sorted(yd.degree_three),
                                                      "subdivided": [[list(e), v] for e, v in sorted(yd.subdivision.items())]})
                yd_node.children.append(_tetra_stage(yd.result))
                child.children.append(yd_node)
        node.children.append(child)
    return node


def full_pipeline(g: Graph) -> Stage:
    """Components, blocks, Tutte torsos, strict tri-separation torsos, Y-Delta, tetra torsos."""
    root = Stage("graph", g)
    for comp in components(g):
        cg = induced_subgraph(g, comp)
        cnode = Stage("component", cg)
        root.children.append(cnode)
        if len(cg) <= 2:
            cnode.info["outcome"] = "basic"
            continue
        bct = block_cut_decomposition(cg)
        for i, block in enumerate(bct.blocks):
            bg = induced_subgraph(cg, block)
            bnode = Stage("block", bg, {"cut_vertices": sorted(set(bct.cut_vertices) & block)})
            cnode.children.append(bnode)
            if len(bg) <= 2:
                bnode.info["outcome"] = "K2"
                continue
            tut = _stage("tutte", tutte_decomposition, bg)
            for torso, kind, bag in zip(tut.torsos, tut.kinds, tut.tree.bags):
                tnode = Stage("tutte-torso", torso, {"bag": sorted(bag), "kind": kind})
                bnode.children.append(tnode)
                if kind == "3-connected":
                    tnode.children.append(_tri_stage(torso))
    return root


def iter_stages(stage: Stage):
    yield stage
    for c in stage.children:
        yield from iter_stages(c)
