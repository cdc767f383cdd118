"""Stars, splitting stars, the decomposition tree of a nested set, and torsos."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, InvariantError
from .graph import Graph, edge, induced_subgraph, make_clique
from .separations import MixedSeparation, is_nested, lambda_set, separator_of

Star = frozenset


def star_key(star: Iterable[MixedSeparation]) -> tuple:
    return tuple(sorted(s.sort_key() for s in star))


def is_star(star: Iterable[MixedSeparation]) -> bool:
    star = list(star)
    return all(s <= t.reversed() for s in star for t in star if s != t)


def interlaces(s: MixedSeparation, star: Iterable[MixedSeparation]) -> bool:
    """(C, D) interlaces a star if every element lies strictly below (C, D) or (D, C)."""
    r = s.reversed()
    return all(x < s or x < r for x in star)


def is_splitting_star(star: Iterable[MixedSeparation], separations: Iterable[MixedSeparation]) -> bool:
    star = frozenset(star)
    return is_star(star) and not any(interlaces(s, star) for s in separations)


def _check_nested_symmetric(separations: Sequence[MixedSeparation]) -> None:
    pool = set(separations)
    for s in separations:
        if s.reversed() not in pool:
            raise InputError("the set of separations must be symmetric")
        if not s.is_proper():
            raise InputError("separations must be proper")
    for i, s in enumerate(separations):
        for t in separations[i + 1:]:
            if not is_nested(s, t):
                raise InputError("the set of separations is not nested")


def splitting_stars(separations: Iterable[MixedSeparation], check: bool = True) -> list[Star]:
    """The splitting stars of a nested symmetric set, each built as
    {(A, B)} together with the maximal elements strictly below (B, A).
    """
    seps = sorted(set(separations), key=MixedSeparation.sort_key)
    if check:
        _check_nested_symmetric(seps)
    if not seps:
        return [frozenset()]
    stars: dict[tuple, Star] = {}
    for s in seps:
        r = s.reversed()
        below = [t for t in seps if t < r]
        maximal = [t for t in below if not any(t < u for u in below)]
        star = frozenset([s, *maximal])
        stars.setdefault(star_key(star), star)
    out = [stars[k] for k in sorted(stars)]
    for star in out:
        if not is_splitting_star(star, seps):
            raise InvariantError(f"constructed star {sorted(star, key=MixedSeparation.sort_key)} is not splitting")
    owner: dict[MixedSeparation, int] = {}
    for i, star in enumerate(out):
        for s in star:
            if s in owner:
                raise InvariantError(f"{s} lies in two splitting stars")
            owner[s] = i
    if len(owner) != len(seps):
        raise InvariantError("some separation lies in no splitting star")
    return out


@dataclass(frozen=True)
class MixedTreeDecomposition:
    """The tree T(S): nodes are splitting stars, indexed in canonical order.

    `edge_map[(i, j)]` is the separation induced by the oriented tree edge
    from node i to node j; its second side contains the bag of node j.
    """

    graph: Graph
    stars: tuple
    tree_edges: tuple
    bags: tuple
    edge_map: dict

    def neighbours(self, i: int) -> list[int]:
        return sorted({b for a, b in self.tree_edges if a == i} | {a for a, b in self.tree_edges if b == i})

    def separations(self) -> set:
        return set(self.edge_map.values())


def bag_of(graph: Graph, star: Iterable[MixedSeparation]) -> frozenset:
    bag = frozenset(graph.vertices)
    for s in star:
        bag &= s.b
    return bag


def build_decomposition(g: Graph, separations: Iterable[MixedSeparation]) -> MixedTreeDecomposition:
    seps = sorted(set(separations), key=MixedSeparation.sort_key)
    for s in seps:
        if s.a | s.b != frozenset(g.vertices):
            raise InputError("separation does not belong to this graph")
    stars = splitting_stars(seps)
    where = {s: i for i, star in enumerate(stars) for s in star}
    tree_edges = set()
    edge_map = {}
    for s, i in where.items():
        j = where[s.reversed()]
        # s sits in the star of node i, so it points towards i
        edge_map[(j, i)] = s
        tree_edges.add((min(i, j), max(i, j)))
    bags = tuple(bag_of(g, star) for star in stars)
    dec = MixedTreeDecomposition(g, tuple(stars), tuple(sorted(tree_edges)), bags, edge_map)
    _verify(dec, seps)
    return dec


def _verify(dec: MixedTreeDecomposition, seps: Sequence[MixedSeparation]) -> None:
    n = len(dec.stars)
    if len(dec.tree_edges) != n - 1:
        raise InvariantError("decomposition graph is not a tree (wrong edge count)")
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in dec.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    if _component(adj, 0, set(range(n))) != set(range(n)):
        raise InvariantError("decomposition graph is disconnected")
    covered = set()
    for bag in dec.bags:
        covered |= bag
    if covered != set(dec.graph.vertices):
        raise InvariantError("bags do not cover the vertex set")
    for v in dec.graph.vertices:
        nodes = {i for i in range(n) if v in dec.bags[i]}
        if _component(adj, min(nodes), nodes) != nodes:
            raise InvariantError(f"nodes whose bags contain {v} are not connected")
    if set(dec.edge_map.values()) != set(seps):
        raise InvariantError("tree edges do not recover the input separations")
    for (i, j), s in dec.edge_map.items():
        if dec.edge_map[(j, i)] != s.reversed():
            raise InvariantError("edge map is not compatible with reversal")
        # the separation induced by the tree edge: unions of bags on each side
        side_i = _component({k: adj[k] - ({j} if k == i else set()) - ({i} if k == j else set())
                             for k in adj}, i, set(range(n)))
        a = set().union(*(dec.bags[k] for k in side_i)) if side_i else set()
        b = set().union(*(dec.bags[k] for k in range(n) if k not in side_i))
        if MixedSeparation(a, b) != s:
            raise InvariantError(f"tree edge {i}->{j} induces a different separation than {s}")


def _component(adj: dict, start: int, allowed: set) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def expanded_torso(g: Graph, star: Iterable[MixedSeparation]) -> Graph:
    star = list(star)
    keep = set(bag_of(g, star))
    lams = [lambda_set(g, s) for s in star]
    for lam in lams:
        keep |= lam
    t = induced_subgraph(g, keep)
    for lam in lams:
        t = make_clique(t, lam)
    return t


@dataclass(frozen=True)
class TorsoResult:
    torso: Graph
    origin: dict  # torso vertex -> frozenset of host vertices

    def host_to_torso(self) -> dict:
        return {v: t for t, vs in self.origin.items() for v in vs}


def compressed_torso(g: Graph, star: Iterable[MixedSeparation]) -> TorsoResult:
    """Expanded torso with every separator edge of the star contracted.

    Each contracted class is represented by its least label.
    """
    star = list(star)
    exp = expanded_torso(g, star)
    present = set(exp.vertices)
    parent = {v: v for v in present}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in star:
        for u, w in separator_of(g, s).cross_edges:
            if u in present and w in present:
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[max(ru, rw)] = min(ru, rw)
    classes: dict[int, set[int]] = {}
    for v in present:
        classes.setdefault(find(v), set()).add(v)
    rep = {v: min(cls) for cls in classes.values() for v in cls}
    edges = {edge(rep[a], rep[b]) for a, b in exp.edge_set if rep[a] != rep[b]}
    torso = Graph(set(rep.values()), edges)
    origin = {min(cls): frozenset(cls) for cls in classes.values()}
    return TorsoResult(torso, origin)


def node_torso(dec: MixedTreeDecomposition, i: int) -> TorsoResult:
    return compressed_torso(dec.graph, dec.stars[i])


def relabel_decomposition(dec: MixedTreeDecomposition, mapping: dict) -> set:
    """The decomposition as a set of (star, bag) pairs after relabeling; used for canonicity checks."""
    out = set()
    for star, bag in zip(dec.stars, dec.bags):
        out.add((frozenset(s.relabel(mapping) for s in star), frozenset(mapping[v] for v in bag)))
    return out


def decomposition_signature(dec: MixedTreeDecomposition) -> set:
    return {(star, bag) for star, bag in zip(dec.stars, dec.bags)}
