"""Independent reference implementations used to check the library.

Everything here is written from the definitions, by brute force, and shares
no code with the package beyond the Graph value type.  networkx serves as a
third-party oracle for connectivity, blocks and isomorphism.
"""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx

from tetradecomp.graph import Graph
from tetradecomp.separations import MixedSeparation


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def nx_connectivity(g: Graph) -> int:
    if len(g) <= 1:
        return 0
    return nx.node_connectivity(to_nx(g))


def nx_k_connected(g: Graph, k: int) -> bool:
    return len(g) > k and nx_connectivity(g) >= k


def nx_isomorphic(g: Graph, h: Graph) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(h))


def nx_blocks(g: Graph) -> set[frozenset]:
    return {frozenset(b) for b in nx.biconnected_components(to_nx(g))}


def order_of(g: Graph, a: frozenset, b: frozenset) -> int:
    sa, sb = a - b, b - a
    return len(a & b) + sum(1 for u, w in g.edges if (u in sa and w in sb) or (u in sb and w in sa))


def crossing_edges(g: Graph, a: frozenset, b: frozenset) -> list[tuple[int, int]]:
    sa, sb = a - b, b - a
    return [(u, w) for u, w in g.edges if (u in sa and w in sb) or (u in sb and w in sa)]


def mixed_separations(g: Graph, max_order: int, proper: bool = True):
    """Every mixed-separation of order <= max_order, both orientations.

    With proper=False, pairs with an empty strict side are included too.
    Assigns each vertex to A - B, A & B or B - A, pruning once the order bound
    is exceeded.
    """
    vs = list(g.vertices)
    n = len(vs)
    adj = {v: set(g.neighbours(v)) for v in vs}
    side: dict[int, int] = {}

    def rec(i: int, order: int):
        if order > max_order:
            return
        if i == n:
            a = frozenset(v for v in vs if side[v] <= 1)
            b = frozenset(v for v in vs if side[v] >= 1)
            if not proper or (a - b and b - a):
                yield MixedSeparation(a, b)
            return
        v = vs[i]
        for s in (0, 1, 2):
            side[v] = s
            extra = 1 if s == 1 else 0
            if s != 1:
                other = 2 - s
                extra += sum(1 for w in adj[v] if side.get(w) == other)
            yield from rec(i + 1, order + extra)
        del side[v]

    yield from rec(0, 0)


def _definition_check(g: Graph, s: MixedSeparation, k: int) -> bool:
    """Degree- and matching-condition at order k, straight from the definition."""
    a, b = s.a, s.b
    if order_of(g, a, b) != k:
        return False
    sa, sb = a - b, b - a
    for v in a & b:
        nb = g.neighbours(v)
        if len([w for w in nb if w in sa]) < 2 or len([w for w in nb if w in sb]) < 2:
            return False
    ends = [v for e in crossing_edges(g, a, b) for v in e]
    return len(ends) == len(set(ends))


def brute_tetra(g: Graph) -> set[MixedSeparation]:
    return {s for s in mixed_separations(g, 4) if _definition_check(g, s, 4)}


def brute_strict_tri(g: Graph) -> set[MixedSeparation]:
    return {s for s in mixed_separations(g, 3) if _definition_check(g, s, 3)}


def nested(s: MixedSeparation, t: MixedSeparation) -> bool:
    for x, y in ((s.a, s.b), (s.b, s.a)):
        for z, w in ((t.a, t.b), (t.b, t.a)):
            if x <= z and y >= w:
                return True
    return False


def brute_totally_nested(seps) -> set[MixedSeparation]:
    seps = list(seps)
    return {s for s in seps if all(nested(s, t) for t in seps)}


def tri_separations(g: Graph, matching: bool = False) -> set[MixedSeparation]:
    """Tri-separations in the sense whose degree-condition counts separator neighbours.

    Every cut vertex needs two neighbours in A and two in B, where A and B
    include the cut itself.  With `matching` the crossing edges must also
    form a matching.
    """
    out = set()
    for s in mixed_separations(g, 3):
        if order_of(g, s.a, s.b) != 3:
            continue
        if any(len(g.neighbours(v) & s.a) < 2 or len(g.neighbours(v) & s.b) < 2 for v in s.cut):
            continue
        if matching:
            ends = [v for e in crossing_edges(g, s.a, s.b) for v in e]
            if len(ends) != len(set(ends)):
                continue
        out.add(s)
    return out


def is_trivial_tri(g: Graph, s: MixedSeparation) -> bool:
    return any(len(side) == 1 and g.degree(next(iter(side))) == 3 for side in (s.strict_a, s.strict_b))


def brute_two_separations(g: Graph) -> set[MixedSeparation]:
    """Vertex 2-separations (no crossing edges) of a 2-connected graph, both orientations."""
    out = set()
    vs = frozenset(g.vertices)
    for x in combinations(g.vertices, 2):
        rest = vs - set(x)
        h = to_nx(g).subgraph(rest)
        comps = [frozenset(c) for c in nx.connected_components(h)]
        if len(comps) < 2:
            continue
        for mask in product((0, 1), repeat=len(comps)):
            if 0 < sum(mask) < len(comps):
                a = frozenset().union(*(c for c, m in zip(comps, mask) if m)) | set(x)
                b = frozenset().union(*(c for c, m in zip(comps, mask) if not m)) | set(x)
                out.add(MixedSeparation(a, b))
    return out


def separators_of_size(g: Graph, k: int) -> set[frozenset]:
    h = to_nx(g)
    out = set()
    for x in combinations(g.vertices, k):
        rest = h.subgraph(set(g.vertices) - set(x))
        if rest.number_of_nodes() and not nx.is_connected(rest):
            out.add(frozenset(x))
    return out


def independent_paths(g: Graph, x, y) -> int:
    """Independent x-y paths by networkx flow on an auxiliary graph with super terminals."""
    x, y = set(x), set(y)
    h = to_nx(g).copy()
    direct = sum(1 for u, w in g.edges if (u in x and w in y) or (u in y and w in x))
    h.remove_edges_from([(u, w) for u, w in g.edges if (u in x and w in y) or (u in y and w in x)])
    h.remove_nodes_from(x | y)
    s, t = "s", "t"
    h.add_node(s)
    h.add_node(t)
    for v in list(h.nodes):
        if v in (s, t):
            continue
        if g.neighbours(v) & x:
            h.add_edge(s, v)
        if g.neighbours(v) & y:
            h.add_edge(v, t)
    if h.has_edge(s, t) or not nx.has_path(h, s, t):
        return direct
    return direct + len(list(nx.node_disjoint_paths(h, s, t)))


def quasi_k_connected(g: Graph, k: int) -> bool:
    """(k-1)-connected, and every (k-1)-separator splits off only single vertices on one side.

    A bipartition of the components of G - X with both sides larger than a
    single vertex would be a (k-1)-separation with two big strict sides.
    """
    if not nx_k_connected(g, k - 1):
        return False
    h = to_nx(g)
    for x in combinations(g.vertices, k - 1):
        sizes = sorted(len(c) for c in nx.connected_components(h.subgraph(set(g.vertices) - set(x))))
        if len(sizes) < 2:
            continue
        for mask in product((0, 1), repeat=len(sizes)):
            left = sum(s for s, m in zip(sizes, mask) if m)
            right = sum(s for s, m in zip(sizes, mask) if not m)
            if left >= 2 and right >= 2:
                return False
    return True


def diagram_oracle(g: Graph, s: MixedSeparation, t: MixedSeparation) -> dict:
    """Link sizes, centre size, diagonal and jumping edges of two crossing separations.

    Sides A, B belong to s and C, D to t.  A separator element of s lies in
    the link of C or D according to where it meets the strict sides of t;
    symmetrically for t.  Edges with ends in opposite corners are diagonal.
    """
    strict = {"A": s.a - s.b, "B": s.b - s.a, "C": t.a - t.b, "D": t.b - t.a}
    cuts = {"s": s.a & s.b, "t": t.a & t.b}
    diagonal, links = set(), {x: set() for x in "ABCD"}

    def place(cut, other_sides, u, w):
        ends = {side for side in other_sides for v in (u, w) if v in strict[side]}
        if ends == set(other_sides):
            diagonal.add(tuple(sorted((u, w))))
        for side in ends:
            links[side].add(tuple(sorted((u, w))))

    for u, w in crossing_edges(g, s.a, s.b):
        place(cuts["s"], "CD", u, w)
    for u, w in crossing_edges(g, t.a, t.b):
        place(cuts["t"], "AB", u, w)
    for e in diagonal:
        for side in "ABCD":
            links[side].discard(e)
    for side in "CD":
        links[side] |= cuts["s"] & strict[side]
    for side in "AB":
        links[side] |= cuts["t"] & strict[side]
    link_vertices = {x: {v for v in links[x] if not isinstance(v, tuple)} for x in "ABCD"}
    jumping = {(u, w) for u, w in g.edges
               if (u in link_vertices["A"] and w in link_vertices["B"]) or (u in link_vertices["B"] and w in link_vertices["A"])
               or (u in link_vertices["C"] and w in link_vertices["D"]) or (u in link_vertices["D"] and w in link_vertices["C"])}
    return {"links": {x: len(links[x]) for x in "ABCD"}, "centre": len(cuts["s"] & cuts["t"]) + len(diagonal),
            "diagonal": diagonal, "jumping": jumping}
