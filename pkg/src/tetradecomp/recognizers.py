"""Recognizers for the torso outcome classes and the 4-angry shapes.

Every recognizer returns a witness that can be re-checked against the
defining property by `verify_torso_class`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Callable, Iterable, Sequence

from .connectivity import is_k_connected, is_quasi_k_connected
from .decomposition import TorsoResult, compressed_torso, interlaces
from .errors import CapabilityError, InputError, InvariantError
from .graph import Graph, components, delete_vertices, induced_subgraph, make_clique
from .ring import RingDecomposition
from .separations import MixedSeparation, is_nested
from .tetra import crossing_partners, enumerate_tetra_separations, totally_nested_set

RING_SEARCH_BOUND = 18


# -- small shapes --------------------------------------------------------------

def is_triangle(h: Graph) -> bool:
    return len(h) == 3 and h.size() == 3


def is_k2(h: Graph) -> bool:
    return len(h) == 2 and h.size() == 1


def is_four_cycle(h: Graph) -> bool:
    return len(h) == 4 and h.size() == 4 and all(h.degree(v) == 2 for v in h.vertices)


def is_small_3_connected(h: Graph) -> bool:
    """3-connected on at most five vertices: K4, the 4-wheel, K5 minus an edge, or K5."""
    return len(h) <= 5 and is_k_connected(h, 3)


def small_torso(h: Graph) -> bool:
    """Torso types allowed in a cycle of small torsos: triangles and small 3-connected graphs."""
    return is_triangle(h) or is_small_3_connected(h)


def tutte_bagel_torso(h: Graph) -> bool:
    return is_triangle(h) or is_four_cycle(h) or is_k_connected(h, 3)


# -- generalised double-wheels -------------------------------------------------

def rim_ring(r: Graph) -> RingDecomposition | None:
    """An adhesion-1 ring of K2's and triangles covering r, if one exists.

    Triangle tips are degree-2 vertices whose neighbours are adjacent; after
    removing one tip per such neighbour pair, the rest must be a cycle.
    """
    if len(r) < 3:
        return None
    if len(r) == 3 and r.size() == 3:
        vs = r.vertices
        cyc = [vs[0], vs[1], vs[2]]
        return _checked_ring(r, [frozenset((cyc[i], cyc[(i + 1) % 3])) for i in range(3)], 1)
    tip_of: dict[tuple[int, int], int] = {}
    for c in r.vertices:
        nb = sorted(r.neighbours(c))
        if len(nb) == 2 and r.has_edge(nb[0], nb[1]):
            tip_of.setdefault((nb[0], nb[1]), c)
    tips = set(tip_of.values())
    if any(a in tips or b in tips for a, b in tip_of):
        return None
    rest = delete_vertices(r, tips)
    if len(rest) < 3 or any(rest.degree(v) != 2 for v in rest.vertices) or len(components(rest)) != 1:
        return None
    cyc = _cycle_order(rest)
    parts = []
    for i in range(len(cyc)):
        a, b = cyc[i], cyc[(i + 1) % len(cyc)]
        key = (min(a, b), max(a, b))
        if key in tip_of:
            parts.append(frozenset((a, b, tip_of[key])))
        else:
            parts.append(frozenset((a, b)))
    return _checked_ring(r, parts, 1)


def _cycle_order(c: Graph) -> list[int]:
    start = c.vertices[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in c.neighbours(cur) if w != prev) if prev is None else \
            next(w for w in c.neighbours(cur) if w != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _checked_ring(host: Graph, parts: Sequence[frozenset], adhesion: int) -> RingDecomposition | None:
    ring = RingDecomposition.from_parts(host, parts, adhesion)
    return None if ring.violations() else ring


@dataclass(frozen=True)
class DoubleWheelWitness:
    centre: tuple[int, int]
    ring: RingDecomposition

    @property
    def rim_length(self) -> int:
        return len(self.ring)

    @property
    def all_k2(self) -> bool:
        return all(is_k2(p) for p in self.ring.parts)

    @property
    def all_triangles(self) -> bool:
        return all(is_triangle(p) for p in self.ring.parts)


def recognize_generalised_double_wheel(x: Graph, centre: Iterable[int] | None = None) -> DoubleWheelWitness | None:
    """A centre {u, v} such that x - u - v is a ring of K2's and triangles glued at single vertices.

    x itself must be 4-connected.  With `centre` only that pair is tried;
    otherwise the pair with the longest ring wins, ties going to the
    lexicographically least pair.
    """
    if not is_k_connected(x, 4):
        return None
    pairs = [tuple(sorted(centre))] if centre is not None else list(combinations(x.vertices, 2))
    best = None
    for u, v in pairs:
        ring = rim_ring(delete_vertices(x, (u, v)))
        if ring is not None and (best is None or len(ring) > len(best.ring)):
            best = DoubleWheelWitness((u, v), ring)
    return best


# -- K4,m ----------------------------------------------------------------------

@dataclass(frozen=True)
class K4mWitness:
    kind: str  # "thickened" or "sprinkled"
    left: tuple
    m: int


def _is_k_m_with_left(x: Graph, left: frozenset) -> bool:
    right = [v for v in x.vertices if v not in left]
    for v in right:
        if x.neighbours(v) != left:
            return False
    return True


def recognize_k4m(x: Graph, left: Iterable[int] | None = None) -> K4mWitness | None:
    """A 4-set Z such that every other vertex is adjacent to exactly Z.

    The kind is "thickened" when Z is a clique and "sprinkled" otherwise.
    """
    if len(x) < 4:
        return None
    candidates = [frozenset(left)] if left is not None else [frozenset(c) for c in combinations(x.vertices, 4)]
    for z in candidates:
        if len(z) == 4 and z <= set(x.vertices) and _is_k_m_with_left(x, z):
            inner = induced_subgraph(x, z).size()
            return K4mWitness("thickened" if inner == 6 else "sprinkled", tuple(sorted(z)), len(x) - 4)
    return None


def recognize_k3m(x: Graph, left: Iterable[int] | None = None) -> K4mWitness | None:
    if len(x) < 3:
        return None
    candidates = [frozenset(left)] if left is not None else [frozenset(c) for c in combinations(x.vertices, 3)]
    for z in candidates:
        if len(z) == 3 and z <= set(x.vertices) and _is_k_m_with_left(x, z):
            inner = induced_subgraph(x, z).size()
            return K4mWitness("thickened" if inner == 3 else "sprinkled", tuple(sorted(z)), len(x) - 3)
    return None


def recognize_quasi_5_connected(x: Graph) -> bool:
    return is_quasi_k_connected(x, 5)


# -- ring search ---------------------------------------------------------------

def _tutte_rule_ok(ring_torsos: Sequence[Graph], ring: RingDecomposition) -> bool:
    m = len(ring_torsos)
    for i in range(m):
        if is_triangle(ring_torsos[i]) and is_triangle(ring_torsos[(i + 1) % m]):
            if ring.adhesion_graph(i).size() != 1:
                return False
    return True


def find_ring_decomposition(x: Graph, adhesion: int, predicate: Callable[[Graph], bool],
                            tutte_bagel: bool = False, max_part: int | None = None,
                            accept: Callable[[RingDecomposition], bool] | None = None,
                            bound: int = RING_SEARCH_BOUND) -> RingDecomposition | None:
    """Exhaustive search for a cycle-decomposition of x with constant adhesion size.

    Parts are induced subgraphs; each torso (part plus cliques on its two
    adhesion sets) must satisfy `predicate`.  With `tutte_bagel`, two
    consecutive triangle torsos must share an edge.  `accept` is an extra
    test on the finished ring.  The first witness in lexicographic search
    order is returned.
    """
    if adhesion not in (1, 2):
        raise InputError("adhesion must be 1 or 2")
    if len(x) > bound:
        raise CapabilityError(f"ring search limited to {bound} vertices, got {len(x)}")
    if max_part is None:
        max_part = len(x)
    vertices = x.vertices
    all_v = frozenset(vertices)

    def torso_ok(part: frozenset, s_in: frozenset, s_out: frozenset) -> bool:
        t = make_clique(make_clique(induced_subgraph(x, part), s_in), s_out)
        return predicate(t)

    def finish(parts: list[frozenset]) -> RingDecomposition | None:
        ring = RingDecomposition.from_parts(x, parts, adhesion)
        if ring.violations():
            return None
        torsos = ring.torsos()
        if not all(predicate(t) for t in torsos):
            return None
        if tutte_bagel and not _tutte_rule_ok(torsos, ring):
            return None
        if accept is not None and not accept(ring):
            return None
        return ring

    for s0 in combinations(vertices, adhesion):
        s0 = frozenset(s0)
        result = _ring_dfs(x, s0, adhesion, max_part, torso_ok, finish)
        if result is not None:
            return result
    return None


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _ring_dfs(x, s0, k, max_part, torso_ok, finish):
    # works on bitmasks over x.vertices; parts are masks
    nb = x.masks()
    n = len(x)
    full = (1 << n) - 1
    s0m = x.to_mask(s0)

    def ball(m: int, radius: int) -> int:
        for _ in range(radius):
            grow = m
            for i in _bits(m):
                grow |= nb[i]
            m = grow
        return m

    def leaves_cleanly(i: int, parts: list[int]) -> bool:
        covered = 0
        bit = 1 << i
        for p in parts:
            if p & bit:
                covered |= p
        return nb[i] & ~covered == 0

    def pieces(avail: int) -> list[int]:
        out = []
        while avail:
            seed = avail & -avail
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for i in _bits(frontier):
                    grow |= nb[i]
                frontier = grow & avail & ~comp
                comp |= frontier
            out.append(comp)
            avail &= ~comp
        return out

    def attach(c: int) -> int:
        m = 0
        for i in _bits(c):
            m |= nb[i]
        return m & ~c

    def dfs(parts: list[int], s_prev: int, used: int, left_s0: int):
        # left_s0: vertices of s0 that left the initial run and must come back before closing.
        # A part is s_prev, the next adhesion s_next, and an interior made of whole
        # components of the unused graph that attach only to s_prev and s_next.
        avail = (full & ~used) | left_s0
        pool = _bits(s_prev | (ball(s_prev, 2) & avail))
        for pair in combinations(pool, k):
            s_next = 0
            for i in pair:
                s_next |= 1 << i
            if s_next == s_prev or s_next & ~(s_prev | avail):
                continue
            if anchored and not s_next & 1:
                continue
            closing = s_next == s0m
            entering = s_next & ~s_prev
            if not closing and entering & s0m & ~left_s0:
                continue
            hull = s_prev | s_next
            rest = full & ~used & ~s_next
            detachable = [c for c in pieces(rest) if attach(c) & ~hull == 0]
            budget = max_part - bin(hull).count("1")
            for r in range(len(detachable) + 1):
                for chosen in combinations(detachable, r):
                    inner = 0
                    for c in chosen:
                        inner |= c
                    if bin(inner).count("1") > budget:
                        continue
                    part = hull | inner
                    if not parts and not part & 1:
                        continue
                    if any(not nb[i] & part for i in _bits(entering)):
                        continue
                    new_parts = parts + [part]
                    leaving = s_prev & ~s_next
                    if not closing:
                        leaving &= ~s0m
                    if not all(leaves_cleanly(i, new_parts) for i in _bits(leaving)):
                        continue
                    if not torso_ok(x.from_mask(part), x.from_mask(s_prev), x.from_mask(s_next)):
                        continue
                    new = entering | inner
                    if closing:
                        if len(new_parts) >= 3 and used | new == full:
                            ring = finish([x.from_mask(p) for p in new_parts])
                            if ring is not None:
                                return ring
                        continue
                    if len(new_parts) > n:
                        continue
                    gone = s_prev & ~s_next & s0m & ~left_s0
                    found = dfs(new_parts, s_next, used | new, (left_s0 & ~new) | gone)
                    if found is not None:
                        return found
        return None

    # Rotate the ring so that the first part is the first one containing vertex 0;
    # then vertex 0 lies in s0 only if it lies in every part.
    anchored = bool(s0m & 1)
    return dfs([], s0m, s0m, 0)


# -- Tutte-bagel bookkeeping -----------------------------------------------------

def good_torso(ring: RingDecomposition, i: int) -> bool:
    """Whether the i-th torso of an adhesion-2 ring is good in the Tutte-bagel sense."""
    torsos = ring.torsos()
    h = torsos[i]
    m = len(torsos)
    nbrs = [torsos[(i - 1) % m], torsos[(i + 1) % m]]
    if not is_k_connected(h, 3):
        return False
    return (len(h) >= 6
            or any(is_four_cycle(t) for t in nbrs)
            or all(is_triangle(t) for t in nbrs)
            or (len(h) == 5 and any(is_triangle(t) for t in nbrs)))


def alpha_factor(ring: RingDecomposition) -> int:
    torsos = ring.torsos()
    m = len(torsos)
    three = [is_k_connected(t, 3) for t in torsos]
    tri = [is_triangle(t) for t in torsos]
    furious = sum(1 for i in range(m) if three[i] and three[(i + 1) % m])
    furious += sum(1 for t in torsos if is_four_cycle(t))
    if all(tri):
        strips = [m]
    else:
        strips = []
        start = next(i for i in range(m) if not tri[i])
        run = 0
        for step in range(1, m + 1):
            i = (start + step) % m
            if tri[i]:
                run += 1
            elif run:
                strips.append(run)
                run = 0
        if run:
            strips.append(run)
    return furious + sum(ceil(2 * d / 3) for d in strips)


def all_torsos_bad(ring: RingDecomposition) -> bool:
    return not any(good_torso(ring, i) for i in range(len(ring)))


# -- torso classification --------------------------------------------------------

QUASI5 = "Quasi5Connected"
CYCLE = "CycleOfSmallTorsos"
DOUBLE_WHEEL = "GeneralisedDoubleWheel"
THICKENED = "ThickenedK4m"
SPRINKLED = "SprinkledK4m"


@dataclass
class TorsoClass:
    verdict: str
    torso: TorsoResult
    witness: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {"verdict": self.verdict}
        w = self.witness
        if "centre" in w:
            out["centre"] = list(w["centre"])
        if "left" in w:
            out["Z"] = list(w["left"])
            out["m"] = w["m"]
        if "ring" in w:
            out["ring"] = [sorted(p) for p in w["ring"].vertex_sets]
        if "rim" in w:
            out["ring"] = [sorted(w["rim"])]
        if "interlacing" in w:
            out["Zsize"] = len(w["vertex_centre"])
        return out


def _is_k4(t: Graph) -> bool:
    return len(t) == 4 and t.size() == 6


def _four_connected_or_k4(t: Graph) -> bool:
    return is_k_connected(t, 4) or _is_k4(t)


def classify_torso(g: Graph, star: Iterable[MixedSeparation], nested: Sequence[MixedSeparation] | None = None,
                   tetras: Sequence[MixedSeparation] | None = None) -> TorsoClass:
    """Classify the torso of a splitting star of the totally-nested tetra-separations.

    The least interlacing tetra-separation and its least crossing partner
    decide which outcome class is checked.
    """
    star = frozenset(star)
    if tetras is None:
        tetras = enumerate_tetra_separations(g)
    if nested is None:
        nested = totally_nested_set(g)
    if not star <= set(nested):
        raise InputError("the star must consist of totally-nested tetra-separations")
    tr = compressed_torso(g, star)
    tau = tr.torso
    to_torso = tr.host_to_torso()
    interlacers = [s for s in tetras if interlaces(s, star)]
    if not interlacers:
        if len(tau) == 4:
            # a bare K4 leaf torso is reported as the thickened K4,0 it is
            wit = recognize_k4m(tau, tau.vertices)
            if wit is None or wit.kind != "thickened":
                raise InvariantError("uninterlaced 4-vertex torso is not a K4")
            return TorsoClass(THICKENED, tr, {"left": wit.left, "m": 0})
        if not recognize_quasi_5_connected(tau):
            raise InvariantError("no tetra-separation interlaces the star, yet the torso is not quasi-5-connected")
        return TorsoClass(QUASI5, tr, {})
    first = interlacers[0]
    partners = [t for t in tetras if not is_nested(first, t)]
    if not partners:
        raise InvariantError(f"interlacing tetra-separation {first} is totally-nested")
    second = partners[0]
    z = first.cut & second.cut
    base = {"interlacing": first, "partner": second, "vertex_centre": tuple(sorted(z))}
    if len(z) == 0:
        if len(tau) > RING_SEARCH_BOUND:
            raise CapabilityError("torso too large for the ring search")
        ring = find_ring_decomposition(tau, 2, small_torso, max_part=5)
        if ring is None or not _four_connected_or_k4(tau):
            raise InvariantError("torso is not a cycle of triangles and small 3-connected torsos")
        return TorsoClass(CYCLE, tr, {**base, "ring": ring})
    if len(z) == 2:
        if not z <= set(to_torso):
            raise InvariantError("vertex-centre is missing from the torso")
        centre = tuple(sorted(to_torso[v] for v in z))
        if _is_k4(tau):
            # degenerate double wheel: the rim is the single edge left after deleting the centre
            rim = tuple(v for v in tau.vertices if v not in centre)
            return TorsoClass(DOUBLE_WHEEL, tr, {**base, "centre": centre, "rim": rim})
        wit = recognize_generalised_double_wheel(tau, centre)
        if wit is None:
            raise InvariantError(f"torso is not a generalised double-wheel with centre {centre}")
        return TorsoClass(DOUBLE_WHEEL, tr, {**base, "centre": wit.centre, "ring": wit.ring})
    if len(z) == 4:
        if star:
            if not z <= set(to_torso):
                raise InvariantError("vertex-centre is missing from the torso")
            left = frozenset(to_torso[v] for v in z)
            wit = recognize_k4m(tau, left)
            if wit is None or wit.kind != "thickened":
                raise InvariantError("torso is not a thickened K4,m with the vertex-centre as left side")
            return TorsoClass(THICKENED, tr, {**base, "left": wit.left, "m": wit.m})
        wit = recognize_k4m(g, z)
        if wit is None or wit.m < 4:
            raise InvariantError("graph is not a sprinkled K4,m (m >= 4) with the vertex-centre as left side")
        return TorsoClass(SPRINKLED, tr, {**base, "left": wit.left, "m": wit.m})
    raise InvariantError(f"vertex-centre of a crossing pair has size {len(z)}")


def verify_torso_class(tc: TorsoClass) -> list[str]:
    """Re-check a classification against the definition of its class; returns problems found."""
    tau = tc.torso.torso
    w = tc.witness
    problems = []
    if tc.verdict == QUASI5:
        if not is_quasi_k_connected(tau, 5):
            problems.append("torso is not quasi-5-connected")
    elif tc.verdict == CYCLE:
        ring = w["ring"]
        if ring.host != tau:
            problems.append("ring is not a decomposition of the torso")
        problems += ring.violations()
        if ring.adhesion_size != 2:
            problems.append("adhesion size is not 2")
        if not all(small_torso(t) for t in ring.torsos()):
            problems.append("a ring torso is neither a triangle nor small 3-connected")
        if not _four_connected_or_k4(tau):
            problems.append("torso is neither 4-connected nor a K4")
    elif tc.verdict == DOUBLE_WHEEL and "rim" in w:
        if not _is_k4(tau) or len(w["rim"]) != 2 or set(w["centre"]) | set(w["rim"]) != set(tau.vertices):
            problems.append("degenerate double wheel is not a K4 split into centre and rim edge")
    elif tc.verdict == DOUBLE_WHEEL:
        u, v = w["centre"]
        ring = w["ring"]
        if not is_k_connected(tau, 4):
            problems.append("torso is not 4-connected")
        if ring.host != delete_vertices(tau, (u, v)):
            problems.append("ring is not a decomposition of the torso minus the centre")
        problems += ring.violations()
        if ring.adhesion_size != 1:
            problems.append("adhesion size is not 1")
        if not all(is_k2(p) or is_triangle(p) for p in ring.parts):
            problems.append("a rim part is neither K2 nor a triangle")
    elif tc.verdict in (THICKENED, SPRINKLED):
        left = frozenset(w["left"])
        host = tau if tc.verdict == THICKENED else tc.torso.torso
        if not _is_k_m_with_left(host, left):
            problems.append("not a K4,m with the given left side")
        if tc.verdict == THICKENED and induced_subgraph(host, left).size() != 6:
            problems.append("left side is not a clique")
        if tc.verdict == SPRINKLED and len(host) - 4 < 4:
            problems.append("sprinkled K4,m needs m >= 4")
    else:
        problems.append(f"unknown verdict {tc.verdict}")
    if "vertex_centre" in w:
        z = set(w["vertex_centre"])
        if w["interlacing"].cut & w["partner"].cut != z or is_nested(w["interlacing"], w["partner"]):
            problems.append("vertex-centre witness does not re-check")
    return problems


# -- Angry Theorem ---------------------------------------------------------------

@dataclass
class AngryVerdict:
    angry: bool
    shapes: list = field(default_factory=list)   # matching shape numbers 1..4
    witnesses: dict = field(default_factory=dict)

    @property
    def shape(self) -> int | None:
        return self.shapes[0] if self.shapes else None


def tutte_bagel_witness(g: Graph) -> RingDecomposition | None:
    """A Tutte-bagel of g with all torsos bad and alpha at least 4."""
    if len(g) > RING_SEARCH_BOUND:
        raise CapabilityError("graph too large for the ring search")
    return find_ring_decomposition(
        g, 2, tutte_bagel_torso, tutte_bagel=True, max_part=5,
        accept=lambda ring: all_torsos_bad(ring) and alpha_factor(ring) >= 4)


def double_wheel_shape(g: Graph) -> DoubleWheelWitness | None:
    """A double-wheel or double-wheel of triangles with rim length at least 4."""
    if not is_k_connected(g, 4):
        return None
    for u, v in combinations(g.vertices, 2):
        ring = rim_ring(delete_vertices(g, (u, v)))
        if ring is None or len(ring) < 4:
            continue
        wit = DoubleWheelWitness((u, v), ring)
        if wit.all_k2 or wit.all_triangles:
            return wit
    return None


def classify_4_angry(g: Graph) -> AngryVerdict:
    """Decide 4-angriness and report which shapes of the Angry Theorem match."""
    if not is_k_connected(g, 4):
        raise InputError("graph must be 4-connected")
    if len(g) < 8:
        raise InputError("graph must have at least 8 vertices")
    nested = totally_nested_set(g)
    if nested:
        return AngryVerdict(False, [], {"totally_nested": nested[0]})
    verdict = AngryVerdict(True)
    if recognize_quasi_5_connected(g):
        verdict.shapes.append(1)
        verdict.witnesses[1] = True
    if len(g) <= RING_SEARCH_BOUND:
        ring = tutte_bagel_witness(g)
        if ring is not None:
            verdict.shapes.append(2)
            verdict.witnesses[2] = ring
    wheel = double_wheel_shape(g)
    if wheel is not None:
        verdict.shapes.append(3)
        verdict.witnesses[3] = wheel
    k = recognize_k4m(g)
    if k is not None and k.m >= 4:
        verdict.shapes.append(4)
        verdict.witnesses[4] = k
    if not verdict.shapes:
        raise InvariantError("4-angry graph matches none of the four shapes")
    return verdict
