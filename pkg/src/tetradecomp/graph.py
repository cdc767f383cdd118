"""Immutable simple graphs on integer labels, plus the elementary operations on them."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .errors import CapabilityError, InputError

ISOMORPHISM_BOUND = 12


def edge(u: int, v: int) -> tuple[int, int]:
    """Normalised representation of the undirected edge uv."""
    if u == v:
        raise InputError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph.

    Vertices are non-negative integers.  Edges are stored as sorted pairs.
    Instances never change after construction, so derived data (bitmasks,
    connectivity answers) is cached on the instance.
    """

    __slots__ = ("_vertices", "_edges", "_adj", "_cache")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()):
        vs = set()
        for v in vertices:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"vertex labels must be non-negative integers, got {v!r}")
            vs.add(v)
        es = set()
        for e in edges:
            u, v = e
            if u not in vs or v not in vs:
                raise InputError(f"edge {u}-{v} has an endpoint outside the vertex set")
            es.add(edge(u, v))
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(sorted(vs))
        self._edges = frozenset(es)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._cache: dict = {}

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> Graph:
        edges = [tuple(e) for e in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(vs, edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    @property
    def edge_set(self) -> frozenset:
        return self._edges

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def size(self) -> int:
        return len(self._edges)

    def neighbours(self, v: int) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise InputError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def degree_sequence(self) -> list[int]:
        return sorted((len(n) for n in self._adj.values()), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    # bitmask view used by the enumeration engines
    def index(self) -> dict[int, int]:
        if "index" not in self._cache:
            self._cache["index"] = {v: i for i, v in enumerate(self._vertices)}
        return self._cache["index"]

    def masks(self) -> list[int]:
        """Neighbourhood bitmasks in vertex order."""
        if "masks" not in self._cache:
            idx = self.index()
            out = []
            for v in self._vertices:
                m = 0
                for w in self._adj[v]:
                    m |= 1 << idx[w]
                out.append(m)
            self._cache["masks"] = out
        return self._cache["masks"]

    def to_mask(self, s: Iterable[int]) -> int:
        idx = self.index()
        m = 0
        for v in s:
            m |= 1 << idx[v]
        return m

    def from_mask(self, m: int) -> frozenset:
        vs = self._vertices
        out = []
        i = 0
        while m:
            if m & 1:
                out.append(vs[i])
            m >>= 1
            i += 1
        return frozenset(out)


def components(g: Graph) -> list[frozenset]:
    """Vertex sets of the connected components, ordered by least vertex."""
    seen: set[int] = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbours(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    s = set(s)
    for v in s:
        if v not in g:
            raise InputError(f"unknown vertex {v}")
    return Graph(s, (e for e in g.edge_set if e[0] in s and e[1] in s))


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    s = set(s)
    return induced_subgraph(g, (v for v in g.vertices if v not in s))


def delete_edges(g: Graph, es: Iterable[Iterable[int]]) -> Graph:
    drop = {edge(*e) for e in es}
    return Graph(g.vertices, (e for e in g.edge_set if e not in drop))


def add_edges(g: Graph, es: Iterable[Iterable[int]]) -> Graph:
    return Graph(g.vertices, list(g.edge_set) + [tuple(e) for e in es])


def make_clique(g: Graph, s: Iterable[int]) -> Graph:
    s = sorted(set(s))
    return add_edges(g, ((u, v) for i, u in enumerate(s) for v in s[i + 1:]))


def edges_between(g: Graph, x: Iterable[int], y: Iterable[int]) -> list[tuple[int, int]]:
    """Edges with one end in x and the other in y, each written (x-end, y-end)."""
    y = set(y)
    out = []
    for u in sorted(set(x)):
        for w in sorted(g.neighbours(u)):
            if w in y:
                out.append((u, w))
    return out


def contract_edge(g: Graph, e: Iterable[int], representative: int) -> tuple[Graph, dict[int, int]]:
    """Identify the ends of e into `representative`; returns the graph and old->new labels."""
    u, v = e
    if not g.has_edge(u, v):
        raise InputError(f"{u}-{v} is not an edge")
    if representative not in (u, v):
        raise InputError("representative must be an endpoint of the contracted edge")
    other = v if representative == u else u
    mapping = {w: w for w in g.vertices}
    mapping[other] = representative
    new_edges = set()
    for a, b in g.edge_set:
        a, b = mapping[a], mapping[b]
        if a != b:
            new_edges.add(edge(a, b))
    return Graph(set(mapping.values()), new_edges), mapping


def apply_relabeling(g: Graph, mapping: Mapping[int, int]) -> Graph:
    if set(mapping) != set(g.vertices):
        raise InputError("relabeling domain must equal the vertex set")
    if len(set(mapping.values())) != len(mapping):
        raise InputError("relabeling is not injective")
    return Graph(mapping.values(), ((mapping[a], mapping[b]) for a, b in g.edge_set))


def find_isomorphism(g: Graph, h: Graph, bound: int = ISOMORPHISM_BOUND) -> dict[int, int] | None:
    """Backtracking search for an isomorphism g -> h, pruned by degrees.

    Refuses graphs larger than `bound` since the search is exponential.
    """
    if len(g) != len(h) or g.size() != h.size():
        return None
    if len(g) > bound:
        raise CapabilityError(f"isomorphism search limited to {bound} vertices, got {len(g)}")
    if g.degree_sequence() != h.degree_sequence():
        return None
    # match high-degree, well-connected vertices first
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(g.vertices)
    while remaining:
        v = max(remaining, key=lambda x: (len(g.neighbours(x) & placed), g.degree(x), -x))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    h_by_degree: dict[int, list[int]] = {}
    for w in h.vertices:
        h_by_degree.setdefault(h.degree(w), []).append(w)
    phi: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in h_by_degree.get(g.degree(v), ()):
            if w in used:
                continue
            if all((phi[x] in h.neighbours(w)) == (x in g.neighbours(v)) for x in phi):
                phi[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del phi[v]
                used.discard(w)
        return False

    return dict(phi) if extend(0) else None


def is_isomorphic(g: Graph, h: Graph, bound: int = ISOMORPHISM_BOUND) -> bool:
    return find_isomorphism(g, h, bound) is not None


def complete_graph(n: int, start: int = 0) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, ((u, v) for u in vs for v in vs if u < v))


def cycle_graph(n: int, start: int = 0) -> Graph:
    return Graph(range(start, start + n), ((start + i, start + (i + 1) % n) for i in range(n)))


def path_graph(n: int, start: int = 0) -> Graph:
    return Graph(range(start, start + n), ((start + i, start + i + 1) for i in range(n - 1)))
