"""Constructors for the graph families used throughout the library and its tests.

Labeling schemes are fixed so that tests can refer to particular vertices:

* circular_saw(n, k): (v, 0) is v and (v, 1) is n + v.
* double_wheel(rim): rim 0..rim-1 in cyclic order, hubs rim and rim + 1.
* double_wheel_of_triangles(rim): ring vertices 0, 2, ..., tips 1, 3, ...
  (tip 2i + 1 sits on ring vertices 2i and 2i + 2), hubs 2 rim and 2 rim + 1.
* k4m / k3m: left side 0..3 (0..2), right side after it.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .connectivity import is_k_connected
from .errors import InputError
from .graph import Graph, complete_graph, edge
from .ring import RingDecomposition


def circular_saw(n: int, k: int) -> Graph:
    """Vertex (v, 0) is joined to (v, 1), ..., (v + k - 1, 1), indices mod n."""
    if k < 1 or n < 2 * k + 2:
        raise InputError(f"circular saw needs n >= 2k + 2, got n={n}, k={k}")
    return Graph(range(2 * n), ((v, n + (v + i) % n) for v in range(n) for i in range(k)))


def saw_vertex(n: int, v: int, layer: int) -> int:
    return v % n + (n if layer else 0)


def double_wheel(rim: int, hub_edge: bool = False) -> Graph:
    return generalised_double_wheel(["K2"] * rim, hub_edge)


def double_wheel_of_triangles(rim: int, hub_edge: bool = False) -> Graph:
    return generalised_double_wheel(["T"] * rim, hub_edge)


def _rim(pattern: Sequence[str]) -> tuple[list[int], list[tuple[int, int]], list[list[int]]]:
    """Ring vertices, edges and parts of an adhesion-1 ring of K2's and triangles."""
    pattern = [p.upper() for p in pattern]
    if len(pattern) < 3:
        raise InputError("a ring needs at least three parts")
    if any(p not in ("K2", "T") for p in pattern):
        raise InputError("pattern entries must be 'K2' or 'T'")
    joints = []
    label = 0
    tips = {}
    for i, p in enumerate(pattern):
        joints.append(label)
        label += 1
        if p == "T":
            tips[i] = label
            label += 1
    n_joints = len(pattern)
    edges = []
    parts = []
    for i, p in enumerate(pattern):
        a, b = joints[i], joints[(i + 1) % n_joints]
        edges.append((a, b))
        if p == "T":
            c = tips[i]
            edges += [(a, c), (c, b)]
            parts.append([a, c, b])
        else:
            parts.append([a, b])
    return list(range(label)), edges, parts


def generalised_double_wheel(pattern: Sequence[str], hub_edge: bool = False) -> Graph:
    """Two hubs joined to every vertex of a ring of K2's ("K2") and triangles ("T").

    Ring vertices are numbered along the ring, each tip right after the ring
    vertex where its triangle starts; the hubs come last.
    """
    vs, edges, _ = _rim(pattern)
    u, v = len(vs), len(vs) + 1
    edges = edges + [(h, x) for h in (u, v) for x in vs]
    if hub_edge:
        edges.append((u, v))
    g = Graph(vs + [u, v], edges)
    if not is_k_connected(g, 4):
        raise InputError("this pattern does not give a 4-connected graph")
    return g


def generalised_wheel(pattern: Sequence[str]) -> Graph:
    """One hub joined to every vertex of a ring of K2's and triangles."""
    vs, edges, _ = _rim(pattern)
    u = len(vs)
    return Graph(vs + [u], edges + [(u, x) for x in vs])


def wheel(rim: int) -> Graph:
    return generalised_wheel(["K2"] * rim)


def rim_ring(pattern: Sequence[str]) -> RingDecomposition:
    """The ground-truth adhesion-1 ring of a generalised (double-)wheel rim."""
    vs, edges, parts = _rim(pattern)
    rim = Graph(vs, edges)
    return RingDecomposition.from_parts(rim, [frozenset(p) for p in parts], 1)


def _left_right(k: int, kind: str, m: int, left_edges: Iterable[Iterable[int]] | None) -> Graph:
    if m < 0:
        raise InputError("m must be non-negative")
    left = list(range(k))
    right = list(range(k, k + m))
    edges = [(a, b) for a in left for b in right]
    if kind == "pure":
        extra = []
    elif kind == "thickened":
        extra = [(a, b) for a in left for b in left if a < b]
    elif kind == "sprinkled":
        extra = [tuple(e) for e in (left_edges or [])]
        for a, b in extra:
            if a not in left or b not in left or a == b:
                raise InputError("sprinkled edges must join two left vertices")
    else:
        raise InputError(f"unknown kind {kind!r}")
    return Graph(left + right, edges + extra)


def k4m(kind: str, m: int, left_edges: Iterable[Iterable[int]] | None = None) -> Graph:
    """K_{4,m} ("pure"), with its left side a K4 ("thickened"), or with given left edges ("sprinkled")."""
    return _left_right(4, kind, m, left_edges)


def k3m(kind: str, m: int, left_edges: Iterable[Iterable[int]] | None = None) -> Graph:
    return _left_right(3, kind, m, left_edges)


def cycle_of_graphs(pieces: Sequence[tuple[Graph, Sequence[int], Sequence[int]]]) -> tuple[Graph, RingDecomposition]:
    """Glue pieces cyclically: the out-pair of each piece is identified with the in-pair of the next.

    Each piece is (graph, in_pair, out_pair).  Returns the glued graph and
    the ring decomposition whose parts are the images of the pieces.
    """
    if len(pieces) < 3:
        raise InputError("need at least three pieces")
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    m = len(pieces)
    for i, (piece, in_pair, out_pair) in enumerate(pieces):
        if len(in_pair) != 2 or len(out_pair) != 2 or set(in_pair) == set(out_pair):
            raise InputError(f"piece {i} needs two distinct adhesion pairs")
        for v in list(in_pair) + list(out_pair):
            if v not in piece:
                raise InputError(f"piece {i} has no vertex {v}")
        for v in piece.vertices:
            find((i, v))
    for i in range(m):
        out_pair = pieces[i][2]
        in_pair = pieces[(i + 1) % m][1]
        for a, b in zip(out_pair, in_pair):
            ra, rb = find((i, a)), find(((i + 1) % m, b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    labels: dict = {}
    maps: list[dict[int, int]] = []
    for i, (piece, _, _) in enumerate(pieces):
        mp = {}
        for v in piece.vertices:
            root = find((i, v))
            if root not in labels:
                labels[root] = len(labels)
            mp[v] = labels[root]
        if len(set(mp.values())) != len(mp):
            raise InputError(f"gluing collapses vertices of piece {i}")
        maps.append(mp)
    edges = set()
    part_graphs = []
    for (piece, _, _), mp in zip(pieces, maps):
        part_graphs.append(Graph(mp.values(), ((mp[a], mp[b]) for a, b in piece.edge_set)))
        for a, b in piece.edge_set:
            edges.add(edge(mp[a], mp[b]))
    g = Graph(range(len(labels)), edges)
    ring = RingDecomposition(g, part_graphs, 2)
    return g, ring


def clique_piece(n: int) -> tuple[Graph, tuple[int, int], tuple[int, int]]:
    """K_n with disjoint adhesion pairs (0, 1) and (2, 3); n >= 4."""
    return complete_graph(n), (0, 1), (2, 3)


def triangle_piece() -> tuple[Graph, tuple[int, int], tuple[int, int]]:
    """A triangle whose two adhesion pairs share the tip 0."""
    return complete_graph(3), (0, 1), (0, 2)


def four_cycle_piece() -> tuple[Graph, tuple[int, int], tuple[int, int]]:
    """The 4-cycle 0-1-3-2 with adhesion pairs (0, 1) and (2, 3): the free edges are 0-2 and 1-3."""
    return Graph(range(4), [(0, 1), (1, 3), (3, 2), (2, 0)]), (0, 1), (2, 3)


def random_4_connected(n: int, seed: int, max_tries: int = 50) -> Graph:
    """A pseudorandom 4-connected graph on n >= 5 vertices.

    Edges are added one at a time, always at a vertex of minimum degree,
    until the graph is 4-connected; this keeps the result fairly sparse.
    """
    if n < 5:
        raise InputError("need at least five vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        while True:
            low = min(len(s) for s in adj.values())
            candidates = [v for v in range(n) if len(adj[v]) == low]
            u = rng.choice(candidates)
            others = [w for w in range(n) if w != u and w not in adj[u]]
            if not others:
                break
            weights = [1.0 / (1 + len(adj[w])) ** 2 for w in others]
            w = rng.choices(others, weights)[0]
            adj[u].add(w)
            adj[w].add(u)
            if low >= 3:
                g = Graph(range(n), ((a, b) for a in adj for b in adj[a] if a < b))
                if is_k_connected(g, 4):
                    return g
    raise InputError("failed to sample a 4-connected graph")


def random_3_connected(n: int, seed: int) -> Graph:
    """Like random_4_connected, stopping at 3-connectivity."""
    if n < 4:
        raise InputError("need at least four vertices")
    rng = random.Random(seed)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    while True:
        low = min(len(s) for s in adj.values())
        u = rng.choice([v for v in range(n) if len(adj[v]) == low])
        others = [w for w in range(n) if w != u and w not in adj[u]]
        weights = [1.0 / (1 + len(adj[w])) ** 2 for w in others]
        w = rng.choices(others, weights)[0]
        adj[u].add(w)
        adj[w].add(u)
        if low >= 2:
            g = Graph(range(n), ((a, b) for a in adj for b in adj[a] if a < b))
            if is_k_connected(g, 3):
                return g
