"""Mixed-separations, their separators, nestedness and crossing diagrams.

A mixed-separation of G is a pair (A, B) of vertex sets with A | B = V(G).
Its separator consists of the vertices in A & B together with the edges
running between A - B and B - A.  Separator elements are written as ints
(vertices) or as 2-tuples (edges); inside a Separator every edge is oriented
with its A-side end first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import InputError, InvariantError
from .graph import Graph, edge

Element = Union[int, tuple]


@dataclass(frozen=True)
class MixedSeparation:
    """An ordered pair (A, B) of vertex sets.

    Comparison operators implement the partial order
    (A, B) <= (C, D)  iff  A is a subset of C and B a superset of D.
    Use `sort_key` for a total order.
    """

    a: frozenset
    b: frozenset

    def __init__(self, a: Iterable[int], b: Iterable[int]):
        object.__setattr__(self, "a", frozenset(a))
        object.__setattr__(self, "b", frozenset(b))

    @property
    def strict_a(self) -> frozenset:
        return self.a - self.b

    @property
    def strict_b(self) -> frozenset:
        return self.b - self.a

    @property
    def cut(self) -> frozenset:
        return self.a & self.b

    def reversed(self) -> MixedSeparation:
        return MixedSeparation(self.b, self.a)

    def is_proper(self) -> bool:
        return bool(self.a - self.b) and bool(self.b - self.a)

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.a)), tuple(sorted(self.b)))

    def __le__(self, other: MixedSeparation) -> bool:
        return self.a <= other.a and self.b >= other.b

    def __lt__(self, other: MixedSeparation) -> bool:
        return self <= other and self != other

    def __ge__(self, other: MixedSeparation) -> bool:
        return other <= self

    def __gt__(self, other: MixedSeparation) -> bool:
        return other < self

    def relabel(self, mapping) -> MixedSeparation:
        return MixedSeparation((mapping[v] for v in self.a), (mapping[v] for v in self.b))

    def __repr__(self) -> str:
        return f"({sorted(self.a)}, {sorted(self.b)})"


@dataclass(frozen=True)
class Separator:
    cut_vertices: tuple[int, ...]
    cross_edges: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.cut_vertices) + len(self.cross_edges)

    @property
    def elements(self) -> tuple:
        return self.cut_vertices + self.cross_edges


def hat(x: Element) -> frozenset:
    """The vertex set of a separator element: {x} for a vertex, its ends for an edge."""
    return frozenset(x) if isinstance(x, tuple) else frozenset((x,))


def hat_all(xs: Iterable[Element]) -> frozenset:
    out: set[int] = set()
    for x in xs:
        out |= hat(x)
    return frozenset(out)


def check_covers(g: Graph, s: MixedSeparation) -> None:
    if s.a | s.b != frozenset(g.vertices):
        raise InputError("the two sides must cover the vertex set exactly")


def separator_of(g: Graph, s: MixedSeparation) -> Separator:
    check_covers(g, s)
    sb = s.strict_b
    cross = tuple((u, w) for u in sorted(s.strict_a) for w in sorted(g.neighbours(u)) if w in sb)
    return Separator(tuple(sorted(s.cut)), cross)


def separation_order(g: Graph, s: MixedSeparation) -> int:
    sb = s.strict_b
    return len(s.cut) + sum(1 for u in s.strict_a for w in g.neighbours(u) if w in sb)


def is_nested(s1: MixedSeparation, s2: MixedSeparation) -> bool:
    if s1.a | s1.b != s2.a | s2.b:
        raise InputError("separations belong to different graphs")
    a, b, c, d = s1.a, s1.b, s2.a, s2.b
    return ((a <= c and b >= d) or (a <= d and b >= c)
            or (b <= c and a >= d) or (b <= d and a >= c))


def lambda_set(g: Graph, s: MixedSeparation) -> frozenset:
    """Cut vertices plus the A-side end of every separator edge."""
    sep = separator_of(g, s)
    return frozenset(sep.cut_vertices) | frozenset(e[0] for e in sep.cross_edges)


CORNERS = ("AC", "AD", "BC", "BD")
OPPOSITE_CORNER = {"AC": "BD", "BD": "AC", "AD": "BC", "BC": "AD"}
OPPOSITE_LINK = {"A": "B", "B": "A", "C": "D", "D": "C"}


@dataclass
class CrossDiagram:
    """The crossing diagram of (A, B) and (C, D).

    `links` maps a side name to its link, a set of vertices and (normalised)
    edges.  `dangling` holds triples (edge, from_link, through_link).
    """

    graph: Graph
    first: MixedSeparation
    second: MixedSeparation
    corners: dict[str, frozenset]
    links: dict[str, frozenset]
    vertex_centre: frozenset
    diagonal_edges: frozenset
    jumping_edges: frozenset
    dangling: list = field(default_factory=list)

    @property
    def centre(self) -> frozenset:
        return self.vertex_centre | self.diagonal_edges

    def link_vertices(self, name: str) -> frozenset:
        return frozenset(x for x in self.links[name] if not isinstance(x, tuple))

    def link_edges(self, name: str) -> frozenset:
        return frozenset(x for x in self.links[name] if isinstance(x, tuple))

    def corner_separator(self, x: str, y: str) -> frozenset:
        """L(X, Y): both links at the corner, the vertex-centre, and the diagonal edges at it."""
        corner = self.corners[x + y]
        diag = frozenset(e for e in self.diagonal_edges if e[0] in corner or e[1] in corner)
        return self.links[x] | self.links[y] | self.vertex_centre | diag


def corner_diagram(g: Graph, s1: MixedSeparation, s2: MixedSeparation) -> CrossDiagram:
    check_covers(g, s1)
    check_covers(g, s2)
    strict = {"A": s1.strict_a, "B": s1.strict_b, "C": s2.strict_a, "D": s2.strict_b}
    corners = {name: frozenset(strict[name[0]] & strict[name[1]]) for name in CORNERS}
    corner_of: dict[int, str] = {}
    for name, vs in corners.items():
        for v in vs:
            corner_of[v] = name
    sep1 = [edge(*e) for e in separator_of(g, s1).cross_edges]
    sep2 = [edge(*e) for e in separator_of(g, s2).cross_edges]
    diagonal = set()
    for e in set(sep1) | set(sep2):
        c0, c1 = corner_of.get(e[0]), corner_of.get(e[1])
        if c0 and c1 and OPPOSITE_CORNER[c0] == c1:
            diagonal.add(e)
    links: dict[str, set] = {name: set() for name in "ABCD"}
    # links for C and D collect separator elements of (A, B), and vice versa
    for edges_, sides_of_other in ((sep1, "CD"), (sep2, "AB")):
        for e in edges_:
            if e in diagonal:
                continue
            for side in sides_of_other:
                if any(corner_of.get(v, "").find(side) >= 0 for v in e):
                    links[side].add(e)
    cut1, cut2 = s1.cut, s2.cut
    for side in "CD":
        links[side] |= cut1 & strict[side]
    for side in "AB":
        links[side] |= cut2 & strict[side]
    links_f = {k: frozenset(v) for k, v in links.items()}
    vertex_centre = frozenset(cut1 & cut2)

    link_vertex_owner: dict[int, str] = {}
    for name, elems in links_f.items():
        for x in elems:
            if not isinstance(x, tuple):
                link_vertex_owner[x] = name
    jumping = set()
    for u, w in g.edge_set:
        lu, lw = link_vertex_owner.get(u), link_vertex_owner.get(w)
        if lu and lw and OPPOSITE_LINK[lu] == lw:
            jumping.add((u, w))
    dangling = []
    for through in "ABCD":
        for e in sorted(links_f[through], key=repr):
            if not isinstance(e, tuple):
                continue
            for v in e:
                frm = link_vertex_owner.get(v)
                if frm and (frm in "AB") != (through in "AB"):
                    dangling.append((e, frm, through))
    return CrossDiagram(g, s1, s2, corners, links_f, vertex_centre,
                        frozenset(diagonal), frozenset(jumping), dangling)


def _corner_name(x: str, y: str) -> str:
    if x in "CD":
        x, y = y, x
    name = x + y
    if name not in CORNERS:
        raise InputError(f"{x}{y} is not a corner")
    return name


def potter_paths(d: CrossDiagram, corner: str) -> list[tuple[int, int, int, int]]:
    """Paths u1u2u3u4 witnessing the dangling part of the potter condition at a corner."""
    x, y = corner[0], corner[1]
    g = d.graph
    out = []
    # u1u2 lies in the X-link and dangles from the vertex u2 of the Y-link;
    # u3u4 lies in the Y-link and dangles from the vertex u3 of the X-link
    yv, xv = d.link_vertices(y), d.link_vertices(x)
    for e in d.link_edges(x):
        for u2 in e:
            if u2 not in yv:
                continue
            u1 = e[0] if e[1] == u2 else e[1]
            for f in d.link_edges(y):
                for u3 in f:
                    if u3 not in xv or not g.has_edge(u2, u3):
                        continue
                    u4 = f[0] if f[1] == u3 else f[1]
                    if len({u1, u2, u3, u4}) == 4:
                        out.append((u1, u2, u3, u4))
    return sorted(out)


def is_potter_corner(d: CrossDiagram, corner: str) -> bool:
    corner = _corner_name(corner[0], corner[1])
    x, y = corner[0], corner[1]
    if d.corners[corner]:
        return False
    if len(d.links[x]) != 2 or len(d.links[y]) != 2:
        return False
    return bool(potter_paths(d, corner))


def crossing_classification(d: CrossDiagram, check_preconditions: bool = True) -> tuple[int, dict]:
    """Common link size of two crossing tetra-separations, checking the crossing structure.

    Raises InvariantError if the links differ in size, the centre has the
    wrong size, a diagonal or jumping edge exists, or a dangling edge occurs
    without links of size two and a potter corner between its links.
    """
    if check_preconditions:
        from .connectivity import is_k_connected
        from .tetra import is_tetra_separation

        if not is_k_connected(d.graph, 4):
            raise InputError("host graph must be 4-connected")
        if not (is_tetra_separation(d.graph, d.first) and is_tetra_separation(d.graph, d.second)):
            raise InputError("both separations must be tetra-separations")
        if is_nested(d.first, d.second):
            raise InputError("the separations do not cross")
    sizes = {name: len(d.links[name]) for name in "ABCD"}
    ell = sizes["A"]
    if len(set(sizes.values())) != 1 or ell not in (0, 1, 2):
        raise InvariantError(f"link sizes {sizes} are not all equal to one value in 0..2")
    if len(d.centre) != 4 - 2 * ell:
        raise InvariantError(f"centre has size {len(d.centre)}, expected {4 - 2 * ell}")
    if d.diagonal_edges:
        raise InvariantError(f"diagonal edges {sorted(d.diagonal_edges)}")
    if d.jumping_edges:
        raise InvariantError(f"jumping edges {sorted(d.jumping_edges)}")
    potter = []
    for e, frm, through in d.dangling:
        corner = _corner_name(frm, through)
        if ell != 2 or not is_potter_corner(d, corner):
            raise InvariantError(f"edge {e} dangles but corner {corner} is not potter")
        potter.append(corner)
    evidence = {
        "link_size": ell,
        "centre": sorted(d.centre, key=repr),
        "potter_corners": sorted(set(potter)),
        "dangling": [(e, frm, through) for e, frm, through in d.dangling],
    }
    return ell, evidence
