"""Vertex connectivity and independent path systems between vertex sets.

Independent X-Y paths meet X only in their first vertex and Y only in their
last vertex, and are pairwise disjoint outside X and Y.  Their maximum number
is computed as a unit-capacity flow: every X-Y edge is a path on its own, and
the remaining paths are disjoint N(X)-N(Y) paths in G - X - Y.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable

from .errors import InputError, InvariantError
from .graph import Graph

INF = float("inf")
_SOURCE = -1
_SINK = -2


def _check_sets(g: Graph, x: Iterable[int], y: Iterable[int]) -> tuple[frozenset, frozenset]:
    x, y = frozenset(x), frozenset(y)
    if not x or not y:
        raise InputError("both vertex sets must be nonempty")
    if x & y:
        raise InputError("vertex sets must be disjoint")
    for v in x | y:
        if v not in g:
            raise InputError(f"unknown vertex {v}")
    return x, y


class _PathFlow:
    """Unit-capacity network on split vertices of G - X - Y.

    Vertex v becomes nodes 2v (in) and 2v+1 (out); the arc between them has
    capacity one, which makes the augmenting paths internally disjoint.
    """

    def __init__(self, g: Graph, x: frozenset, y: frozenset, vertex_cut: bool = False):
        self.g, self.x, self.y = g, x, y
        # with vertex_cut, only the in-out arcs are bounded, so every minimum
        # cut consists of vertices; the flow value is the same
        wide = len(g) + 1 if vertex_cut else 1
        self.direct = [(u, w) for u in sorted(x) for w in sorted(g.neighbours(u)) if w in y]
        self.interior = [v for v in g.vertices if v not in x and v not in y]
        res: dict[int, dict[int, int]] = {_SOURCE: {}, _SINK: {}}
        for v in self.interior:
            res[2 * v] = {}
            res[2 * v + 1] = {}

        def arc(a, b, cap):
            res[a][b] = cap
            res[b].setdefault(a, 0)

        for v in self.interior:
            arc(2 * v, 2 * v + 1, 1)
            nb = g.neighbours(v)
            if nb & x:
                arc(_SOURCE, 2 * v, wide)
            if nb & y:
                arc(2 * v + 1, _SINK, wide)
            for w in sorted(nb):
                if w not in x and w not in y:
                    arc(2 * v + 1, 2 * w, wide)
        self.res = res
        self.flow = 0

    def _augment(self) -> bool:
        res = self.res
        parent = {_SOURCE: None}
        queue = deque([_SOURCE])
        while queue:
            a = queue.popleft()
            for b, c in res[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    if b == _SINK:
                        while parent[b] is not None:
                            p = parent[b]
                            res[p][b] -= 1
                            res[b][p] += 1
                            b = p
                        self.flow += 1
                        return True
                    queue.append(b)
        return False

    def run(self, limit: float = INF) -> int:
        while len(self.direct) + self.flow < limit and self._augment():
            pass
        return len(self.direct) + self.flow

    def reachable(self) -> set[int]:
        seen = {_SOURCE}
        queue = deque([_SOURCE])
        while queue:
            a = queue.popleft()
            for b, c in self.res[a].items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen

    def paths(self) -> list[list[int]]:
        res, g = self.res, self.g

        def carries(a, b):
            # an original arc carries flow iff its residual capacity dropped to zero
            return res[a].get(b) == 0 and res[b].get(a) == 1

        starts = [v for v in self.interior if carries(_SOURCE, 2 * v)]
        out = [list(e) for e in self.direct]
        for s in starts:
            walk = [s]
            while not carries(2 * walk[-1] + 1, _SINK):
                v = walk[-1]
                nxt = [w for w in self.interior
                       if (2 * w) in res[2 * v + 1] and carries(2 * v + 1, 2 * w) and not carries(2 * w + 1, 2 * v)]
                if len(nxt) != 1:
                    raise InvariantError("flow decomposition is not a path system")
                walk.append(nxt[0])
            out.append([min(g.neighbours(walk[0]) & self.x)] + walk + [min(g.neighbours(walk[-1]) & self.y)])
        return out


def max_independent_paths(g: Graph, x: Iterable[int], y: Iterable[int],
                          limit: float = INF) -> tuple[int, list[list[int]]]:
    """Maximum number of independent x-y paths and one family attaining it.

    With `limit` the search stops once that many paths exist, so the count is
    min(limit, maximum).
    """
    x, y = _check_sets(g, x, y)
    net = _PathFlow(g, x, y)
    n = net.run(limit)
    paths = net.paths()
    if __debug__:
        verify_independent_paths(g, x, y, paths)
        if len(paths) != n:
            raise InvariantError(f"flow value {n} but {len(paths)} paths extracted")
    return n, paths


def count_independent_paths(g: Graph, x: Iterable[int], y: Iterable[int], limit: float = INF) -> int:
    """Like max_independent_paths, without extracting the paths."""
    x, y = _check_sets(g, x, y)
    return _PathFlow(g, x, y).run(limit)


def verify_independent_paths(g: Graph, x: Iterable[int], y: Iterable[int], paths: list[list[int]]) -> None:
    x, y = set(x), set(y)
    seen: set[int] = set()
    direct: set[tuple[int, int]] = set()
    for p in paths:
        if len(p) < 2 or p[0] not in x or p[-1] not in y:
            raise InvariantError(f"{p} is not an x-y path")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise InvariantError(f"{p} uses the non-edge {a}-{b}")
        inner = p[1:-1]
        if len(set(inner)) != len(inner) or any(v in x or v in y for v in inner):
            raise InvariantError(f"{p} is not an x-y path")
        if seen & set(inner):
            raise InvariantError("paths are not independent")
        seen |= set(inner)
        if not inner:
            if (p[0], p[1]) in direct:
                raise InvariantError("an x-y edge was used twice")
            direct.add((p[0], p[1]))


def min_strong_separation(g: Graph, x: Iterable[int], y: Iterable[int]) -> tuple[frozenset, frozenset]:
    """A minimum-order mixed-separation (A, B) with x inside A - B and y inside B - A.

    Read off the residual network of a maximum flow.  Its order always equals
    the number of independent x-y paths; this is re-checked here.
    """
    x, y = _check_sets(g, x, y)
    net = _PathFlow(g, x, y, vertex_cut=True)
    n = net.run()
    reach = net.reachable()
    a = x | {v for v in net.interior if 2 * v in reach}
    b = frozenset(g.vertices) - x - {v for v in net.interior if 2 * v + 1 in reach}
    order = len(a & b) + sum(1 for u in a - b for w in g.neighbours(u) if w in b - a)
    if order != n:
        raise InvariantError(f"min-cut order {order} differs from path count {n}")
    return a, b


def min_strong_separation_order(g: Graph, x: Iterable[int], y: Iterable[int]) -> int:
    a, b = min_strong_separation(g, x, y)
    return len(a & b) + sum(1 for u in a - b for w in g.neighbours(u) if w in b - a)


def _connected_after_removal(g: Graph, removed: int) -> bool:
    masks = g.masks()
    full = (1 << len(g)) - 1
    rest = full & ~removed
    if rest == 0:
        return True
    start = rest & -rest
    seen = start
    frontier = start
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nb & rest & ~seen
        seen |= frontier
    return seen == rest


def separating_sets(g: Graph, size: int) -> list[frozenset]:
    """All vertex sets of the given size whose deletion disconnects g."""
    n = len(g)
    out = []
    for combo in combinations(range(n), size):
        m = 0
        for i in combo:
            m |= 1 << i
        if not _connected_after_removal(g, m):
            out.append(frozenset(g.vertices[i] for i in combo))
    return out


def is_k_connected(g: Graph, k: int) -> bool:
    """True iff |g| > k and no set of fewer than k vertices disconnects g."""
    if k < 1:
        raise InputError("k must be positive")
    key = ("kcon", k)
    if key in g._cache:
        return g._cache[key]
    if len(g) <= k:
        ans = False
    elif any(g.degree(v) < k for v in g.vertices):
        ans = False
    else:
        # if a smaller set separates, so does some superset of size k - 1
        ans = not separating_sets(g, k - 1)
    g._cache[key] = ans
    return ans


def connectivity(g: Graph) -> int:
    k = 0
    while is_k_connected(g, k + 1):
        k += 1
    return k


def is_quasi_k_connected(g: Graph, k: int) -> bool:
    """(k-1)-connected, and every (k-1)-separation has a strict side of size one."""
    if k < 2:
        raise InputError("k must be at least 2")
    key = ("quasi", k)
    if key in g._cache:
        return g._cache[key]
    ans = is_k_connected(g, k - 1) and not any(
        _has_balanced_split(g, s) for s in separating_sets(g, k - 1))
    g._cache[key] = ans
    return ans


def _has_balanced_split(g: Graph, s: frozenset) -> bool:
    from .graph import components, delete_vertices

    sizes = [len(c) for c in components(delete_vertices(g, s))]
    total = sum(sizes)
    # some union of components with size in [2, total - 2]
    reachable = {0}
    for c in sizes:
        reachable |= {r + c for r in reachable}
    return any(2 <= r <= total - 2 for r in reachable)
