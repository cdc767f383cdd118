"""Cycle-decompositions: a cyclic sequence of parts glued along adhesion sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvariantError
from .graph import Graph, induced_subgraph, make_clique


@dataclass(frozen=True)
class RingDecomposition:
    """Parts G_0, ..., G_{m-1} of a host graph arranged on a cycle.

    `adhesions[i]` is the vertex set shared by part i and part i + 1.
    """

    host: Graph
    parts: tuple
    adhesion_size: int

    def __init__(self, host: Graph, parts: Sequence[Graph], adhesion_size: int):
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "parts", tuple(parts))
        object.__setattr__(self, "adhesion_size", adhesion_size)

    @classmethod
    def from_parts(cls, host: Graph, vertex_sets: Sequence[frozenset], adhesion_size: int) -> RingDecomposition:
        return cls(host, [induced_subgraph(host, s) for s in vertex_sets], adhesion_size)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def vertex_sets(self) -> list[frozenset]:
        return [frozenset(p.vertices) for p in self.parts]

    @property
    def adhesions(self) -> list[frozenset]:
        vs = self.vertex_sets
        return [vs[i] & vs[(i + 1) % len(vs)] for i in range(len(vs))]

    def adhesion_graph(self, i: int) -> Graph:
        """The intersection of part i and part i + 1."""
        p, q = self.parts[i], self.parts[(i + 1) % len(self.parts)]
        common = set(p.vertices) & set(q.vertices)
        return Graph(common, p.edge_set & q.edge_set)

    def torso(self, i: int) -> Graph:
        adh = self.adhesions
        t = make_clique(self.parts[i], adh[i - 1])
        return make_clique(t, adh[i])

    def torsos(self) -> list[Graph]:
        return [self.torso(i) for i in range(len(self.parts))]

    def violations(self) -> list[str]:
        """Reasons why this is not a cycle-decomposition with constant adhesion size."""
        out = []
        m = len(self.parts)
        if m < 3:
            out.append("a cycle needs at least three parts")
            return out
        covered_v = set()
        covered_e = set()
        for p in self.parts:
            covered_v |= set(p.vertices)
            covered_e |= p.edge_set
            if not p.edge_set <= self.host.edge_set or not set(p.vertices) <= set(self.host.vertices):
                out.append("a part is not a subgraph of the host")
        if covered_v != set(self.host.vertices):
            out.append("parts do not cover all vertices")
        if covered_e != self.host.edge_set:
            out.append("parts do not cover all edges")
        vs = self.vertex_sets
        for v in self.host.vertices:
            idx = [i for i in range(m) if v in vs[i]]
            if not _cyclic_interval(idx, m):
                out.append(f"parts containing {v} are not consecutive")
        for i, a in enumerate(self.adhesions):
            if len(a) != self.adhesion_size:
                out.append(f"adhesion {i} has size {len(a)}")
        return out

    def check(self) -> None:
        problems = self.violations()
        if problems:
            raise InvariantError("; ".join(problems))


def _cyclic_interval(idx: list[int], m: int) -> bool:
    if not idx or len(idx) == m:
        return bool(idx)
    s = set(idx)
    # count maximal runs on the cycle
    starts = sum(1 for i in s if (i - 1) % m not in s)
    return starts == 1
