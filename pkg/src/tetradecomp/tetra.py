"""Tetra-separations: enumeration, reductions, and the two total-nestedness tests.

A tetra-separation is a proper mixed-4-separation (A, B) in which every cut
vertex has at least two neighbours in A - B and in B - A, and whose separator
edges form a matching.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .connectivity import count_independent_paths, is_k_connected
from .errors import CapabilityError, InputError
from .graph import Graph, components, delete_vertices, induced_subgraph
from .separations import (
    Element,
    MixedSeparation,
    check_covers,
    hat,
    hat_all,
    separation_order,
    separator_of,
)

MAX_VERTICES = 24
MAX_SIZE = 120


def tetra_failure(g: Graph, s: MixedSeparation) -> str | None:
    """Name of the first violated condition, or None for a tetra-separation."""
    check_covers(g, s)
    if not s.is_proper():
        return "proper"
    sep = separator_of(g, s)
    if sep.order != 4:
        return "order"
    sa, sb = s.strict_a, s.strict_b
    for v in sep.cut_vertices:
        nb = g.neighbours(v)
        if len(nb & sa) < 2 or len(nb & sb) < 2:
            return "degree"
    ends = [v for e in sep.cross_edges for v in e]
    if len(ends) != len(set(ends)):
        return "matching"
    return None


def is_tetra_separation(g: Graph, s: MixedSeparation) -> bool:
    return tetra_failure(g, s) is None


def _check_bounds(g: Graph, max_vertices: int, max_size: int) -> None:
    if len(g) > max_vertices or len(g) + g.size() > max_size:
        raise CapabilityError(
            f"enumeration bound exceeded: |V|={len(g)} (max {max_vertices}), "
            f"|V|+|E|={len(g) + g.size()} (max {max_size})")


def enumerate_tetra_separations(g: Graph, max_vertices: int | None = None,
                                max_size: int | None = None) -> list[MixedSeparation]:
    """All tetra-separations of a 4-connected graph, both orientations, sorted.

    For every set T of t cut vertices the remaining vertices are split into
    the two strict sides by branch and bound, keeping exactly 4 - t crossing
    edges and pruning as soon as the crossing edges stop being a matching.
    """
    if not is_k_connected(g, 4):
        raise InputError("tetra-separations are enumerated for 4-connected graphs only")
    key = "tetra"
    if key in g._cache:
        return list(g._cache[key])
    _check_bounds(g, MAX_VERTICES if max_vertices is None else max_vertices,
                  MAX_SIZE if max_size is None else max_size)
    found = []
    for a_mask, b_mask in _split_masks(g):
        found.append(MixedSeparation(g.from_mask(a_mask), g.from_mask(b_mask)))
        found.append(MixedSeparation(g.from_mask(b_mask), g.from_mask(a_mask)))
    found.sort(key=MixedSeparation.sort_key)
    g._cache[key] = tuple(found)
    return found


def _split_masks(g: Graph):
    n = len(g)
    masks = g.masks()
    full = (1 << n) - 1
    for t in range(5):
        budget = 4 - t
        for cut in combinations(range(n), t):
            t_mask = 0
            for i in cut:
                t_mask |= 1 << i
            order = _bfs_order(masks, full & ~t_mask)
            for x_mask, y_mask in _bipartitions(masks, order, budget):
                ok = True
                for i in cut:
                    m = masks[i]
                    if bin(m & x_mask).count("1") < 2 or bin(m & y_mask).count("1") < 2:
                        ok = False
                        break
                if ok:
                    yield x_mask | t_mask, y_mask | t_mask


def _bfs_order(masks: Sequence[int], rest: int) -> list[int]:
    order = []
    seen = 0
    while rest & ~seen:
        low = rest & ~seen
        start = (low & -low).bit_length() - 1
        seen |= 1 << start
        queue = [start]
        k = 0
        while k < len(queue):
            v = queue[k]
            k += 1
            nb = masks[v] & rest & ~seen
            while nb:
                bit = nb & -nb
                seen |= bit
                queue.append(bit.bit_length() - 1)
                nb ^= bit
        order.extend(queue)
    return order


def _bipartitions(masks: Sequence[int], order: list[int], budget: int):
    """Splits (X, Y) of the vertices in `order` with exactly `budget` X-Y edges forming a matching.

    The first vertex always goes to X, so each unordered split appears once.
    """
    if not order:
        return
    n = len(order)
    out = []

    def place(i: int, x: int, y: int, matched: int, used: int) -> None:
        if i == n:
            if used == budget and y:
                out.append((x, y))
            return
        v = order[i]
        bit = 1 << v
        nb = masks[v]
        for side in (0, 1):
            other = nb & (y if side == 0 else x)
            if other:
                if other & (other - 1) or other & matched or used == budget:
                    continue
                if side == 0:
                    place(i + 1, x | bit, y, matched | bit | other, used + 1)
                else:
                    place(i + 1, x, y | bit, matched | bit | other, used + 1)
            elif side == 0:
                place(i + 1, x | bit, y, matched, used)
            else:
                place(i + 1, x, y | bit, matched, used)

    first = 1 << order[0]
    place(1, first, 0, 0, 0)
    yield from out


def left_reduction(g: Graph, s: MixedSeparation) -> MixedSeparation:
    sa = s.strict_a
    drop = {v for v in s.cut if len(g.neighbours(v) & sa) <= 1}
    return MixedSeparation(s.a - drop, s.b)


def right_reduction(g: Graph, s: MixedSeparation) -> MixedSeparation:
    sb = s.strict_b
    drop = {v for v in s.cut if len(g.neighbours(v) & sb) <= 1}
    return MixedSeparation(s.a, s.b - drop)


def left_right_reduction(g: Graph, s: MixedSeparation) -> MixedSeparation:
    return right_reduction(g, left_reduction(g, s))


def right_left_reduction(g: Graph, s: MixedSeparation) -> MixedSeparation:
    return left_reduction(g, right_reduction(g, s))


def reduction_conditions(g: Graph, s: MixedSeparation) -> tuple[bool, bool, bool]:
    """The three conditions deciding whether the left-right-reduction is a tetra-separation."""
    sep = separator_of(g, s)
    sa, sb = s.strict_a, s.strict_b
    weak = sum(1 for v in sep.cut_vertices if len(g.neighbours(v) & sa) <= 1)
    return (len(sa) >= 2,
            weak >= 2 - len(sb),
            len(sb) >= 2 or len(sep.cross_edges) <= 1)


def reduction_characterization(g: Graph, s: MixedSeparation) -> bool:
    """Predicts whether the left-right-reduction of a mixed-4-separation is a tetra-separation.

    Valid for 4-connected graphs.  The prediction uses only (A, B) itself.
    """
    if separation_order(g, s) != 4:
        raise InputError("expected a separation of order 4")
    return all(reduction_conditions(g, s))


# -- external 5-connectivity -------------------------------------------------

def is_half_connected(g: Graph, t: MixedSeparation) -> bool:
    for side in (t.strict_a, t.strict_b):
        if len(components(induced_subgraph(g, side))) == 1:
            return True
    return False


def _elements(g: Graph, t: MixedSeparation) -> tuple:
    key = ("elements", t)
    if key not in g._cache:
        g._cache[key] = separator_of(g, t).elements
    return g._cache[key]


def _vertex_elements(xs: Iterable[Element]) -> frozenset:
    return frozenset(x for x in xs if not isinstance(x, tuple))


def _has_edge_between(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> bool:
    ys = set(ys)
    return any(g.neighbours(x) & ys for x in xs)


def is_3_linked_pair(g: Graph, t: MixedSeparation, pair: Iterable[Element]) -> bool:
    pair = tuple(pair)
    sep = _elements(g, t)
    if len(pair) != 2 or any(x not in sep for x in pair):
        raise InputError("pair must consist of two separator elements")
    x1, x2 = pair
    others = [x for x in sep if x not in pair]
    if any(isinstance(x, tuple) for x in others):
        return True
    h1, h2 = hat(x1), hat(x2)
    if _vertex_elements(pair) and _has_edge_between(g, h1, h2):
        return True
    rest = delete_vertices(g, others)
    return count_independent_paths(rest, h1, h2, limit=3) >= 3


def is_weird(g: Graph, t: MixedSeparation, pair: Iterable[Element], side: str) -> bool:
    """Whether a pair made of an edge ab and a vertex x is A-weird (or B-weird).

    A-weird means x has exactly one neighbour in A - {a}, where a is the end
    of the edge in A - B.  Pairs of any other shape are never weird.
    """
    pair = tuple(pair)
    edges = [x for x in pair if isinstance(x, tuple)]
    verts = [x for x in pair if not isinstance(x, tuple)]
    if len(edges) != 1 or len(verts) != 1:
        return False
    (u, w), x = edges[0], verts[0]
    if side == "A":
        end = u if u in t.strict_a else w
        return len(g.neighbours(x) & (t.a - {end})) == 1
    if side == "B":
        end = u if u in t.strict_b else w
        return len(g.neighbours(x) & (t.b - {end})) == 1
    raise InputError("side must be 'A' or 'B'")


def balanced_bipartitions(elements: Sequence[Element]) -> list[tuple[tuple, tuple]]:
    first = elements[0]
    out = []
    for other in elements[1:]:
        p1 = (first, other)
        p2 = tuple(x for x in elements if x not in p1)
        out.append((p1, p2))
    return out


def _one_potter_linked_to(g: Graph, t: MixedSeparation, p: tuple, q: tuple, side: str) -> bool:
    if not is_weird(g, t, p, side):
        return True
    y = t.b if side == "A" else t.a
    hp, hq = hat_all(p) & y, hat_all(q) & y
    if _has_edge_between(g, _vertex_elements(p), hq) or _has_edge_between(g, hp, _vertex_elements(q)):
        return True
    return count_independent_paths(induced_subgraph(g, y), hp, hq, limit=3) >= 3


def is_potter_linked(g: Graph, t: MixedSeparation, bip: tuple, h: int) -> bool:
    p1, p2 = tuple(bip[0]), tuple(bip[1])
    if h == 0:
        h1, h2 = hat_all(p1), hat_all(p2)
        if _has_edge_between(g, _vertex_elements(p1), h2) or _has_edge_between(g, h1, _vertex_elements(p2)):
            return True
        return count_independent_paths(g, h1, h2, limit=5) >= 5
    if h == 1:
        return all(_one_potter_linked_to(g, t, p, q, side)
                   for side in "AB" for p, q in ((p1, p2), (p2, p1)))
    if h == 2:
        return ((not is_weird(g, t, p1, "A") or not is_weird(g, t, p2, "B"))
                and (not is_weird(g, t, p1, "B") or not is_weird(g, t, p2, "A")))
    raise InputError("h must be 0, 1 or 2")


def external_failure(g: Graph, t: MixedSeparation) -> str | None:
    """The first failing ingredient of external 5-connectivity, or None.

    Cheap tests run first; flow computations only when needed.
    """
    if not is_half_connected(g, t):
        return "half-connected"
    sep = _elements(g, t)
    bips = balanced_bipartitions(sep)
    for bip in bips:
        if not is_potter_linked(g, t, bip, 2):
            return "2-potter-linked"
    for pair in combinations(sep, 2):
        if not is_3_linked_pair(g, t, pair):
            return "3-linked"
    for bip in bips:
        if not is_potter_linked(g, t, bip, 1):
            return "1-potter-linked"
    for bip in bips:
        if not is_potter_linked(g, t, bip, 0):
            return "0-potter-linked"
    return None


def is_externally_5_connected(g: Graph, t: MixedSeparation) -> bool:
    return external_failure(g, t) is None


def _nested_masks(a: int, b: int, c: int, d: int) -> bool:
    return ((a & ~c == 0 and d & ~b == 0) or (a & ~d == 0 and c & ~b == 0)
            or (b & ~c == 0 and d & ~a == 0) or (b & ~d == 0 and c & ~a == 0))


def crossing_partners(g: Graph, tetras: Sequence[MixedSeparation] | None = None) -> dict:
    """Map each tetra-separation to the sorted list of tetra-separations crossing it."""
    if tetras is None:
        tetras = enumerate_tetra_separations(g)
    ms = [(g.to_mask(s.a), g.to_mask(s.b)) for s in tetras]
    out = {s: [] for s in tetras}
    for i in range(len(ms)):
        a, b = ms[i]
        for j in range(i + 1, len(ms)):
            c, d = ms[j]
            if not _nested_masks(a, b, c, d):
                out[tetras[i]].append(tetras[j])
                out[tetras[j]].append(tetras[i])
    return out


def totally_nested_set(g: Graph, method: str = "oracle", max_vertices: int | None = None,
                       max_size: int | None = None) -> list[MixedSeparation]:
    """The totally-nested tetra-separations, sorted.

    method="oracle" compares every pair of tetra-separations;
    method="characterization" tests each one for external 5-connectivity;
    method="both" runs both and raises if they disagree.
    """
    tetras = enumerate_tetra_separations(g, max_vertices, max_size)
    if method == "oracle":
        ms = [(g.to_mask(s.a), g.to_mask(s.b)) for s in tetras]
        crossed = [False] * len(ms)
        for i in range(len(ms)):
            a, b = ms[i]
            for j in range(i + 1, len(ms)):
                if crossed[i] and crossed[j]:
                    continue
                c, d = ms[j]
                if not _nested_masks(a, b, c, d):
                    crossed[i] = crossed[j] = True
        return [s for s, x in zip(tetras, crossed) if not x]
    if method == "characterization":
        return [s for s in tetras if is_externally_5_connected(g, s)]
    if method == "both":
        from .errors import InvariantError

        first = totally_nested_set(g, "oracle", max_vertices, max_size)
        second = totally_nested_set(g, "characterization", max_vertices, max_size)
        if first != second:
            raise InvariantError("pairwise and external-5-connectivity tests disagree")
        return first
    raise InputError(f"unknown method {method!r}")


def is_4_angry(g: Graph, method: str = "oracle") -> bool:
    return is_k_connected(g, 4) and not totally_nested_set(g, method)
