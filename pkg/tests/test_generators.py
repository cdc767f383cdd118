import pytest
from hypothesis import given, strategies as st

from corpus import octahedron
from oracles import nx_isomorphic, nx_k_connected
from tetradecomp import generators as gen
from tetradecomp.connectivity import is_k_connected
from tetradecomp.errors import InputError
from tetradecomp.graph import complete_graph, is_isomorphic
from tetradecomp.recognizers import recognize_generalised_double_wheel, recognize_k3m, recognize_k4m
from tetradecomp.separations import MixedSeparation, corner_diagram, is_nested
from tetradecomp.tetra import is_4_angry, is_tetra_separation

Z = frozenset(range(4))


def test_saw_8_3_counts():
    g = gen.circular_saw(8, 3)
    assert len(g) == 16 and g.size() == 24
    assert all(g.degree(v) == 3 for v in g.vertices)
    assert g.neighbours(0) == {8, 9, 10}
    assert gen.saw_vertex(8, 9, 1) == 9


@pytest.mark.parametrize("n,k", [(9, 3), (10, 4), (12, 4), (12, 5)])
def test_saws_are_k_connected(n, k):
    g = gen.circular_saw(n, k)
    assert is_k_connected(g, k) and nx_k_connected(g, k)
    assert not is_k_connected(g, k + 1)


def test_saw_too_small():
    with pytest.raises(InputError):
        gen.circular_saw(9, 4)


def test_double_wheel_shapes():
    assert is_isomorphic(gen.double_wheel(4), octahedron()) and nx_isomorphic(gen.double_wheel(4), octahedron())
    g = gen.double_wheel(6, hub_edge=True)
    assert g.has_edge(6, 7) and len(g) == 8 and g.size() == 6 + 12 + 1
    t = gen.double_wheel_of_triangles(4)
    assert len(t) == 10 and t.neighbours(1) == {0, 2, 8, 9}
    assert is_4_angry(gen.double_wheel(6)) and is_4_angry(t)


@pytest.mark.parametrize("rim,hub", [(4, False), (5, False), (8, False), (3, True), (4, True), (4, False), (6, True)])
def test_double_wheels_are_4_connected(rim, hub):
    assert is_k_connected(gen.double_wheel(rim, hub), 4)
    assert is_k_connected(gen.double_wheel_of_triangles(rim, hub), 4)


def test_double_wheel_without_hub_edge_needs_rim_four():
    with pytest.raises(InputError):
        gen.double_wheel(3)


def test_generalised_double_wheel_patterns():
    assert gen.generalised_double_wheel(["K2"] * 5) == gen.double_wheel(5)
    assert gen.generalised_double_wheel(["T"] * 4) == gen.double_wheel_of_triangles(4)
    pattern = ["T", "K2", "T", "K2", "K2"]
    g = gen.generalised_double_wheel(pattern)
    w = recognize_generalised_double_wheel(g)
    assert set(w.ring.vertex_sets) == set(gen.rim_ring(pattern).vertex_sets)
    with pytest.raises(InputError):
        gen.generalised_double_wheel(["K2", "X", "T"])
    with pytest.raises(InputError):
        gen.generalised_double_wheel(["K2", "T"])


def test_k4m_variants():
    assert gen.k4m("thickened", 0) == complete_graph(4)
    k44 = gen.k4m("pure", 4)
    assert is_k_connected(k44, 4) and k44.size() == 16
    with pytest.raises(InputError):
        gen.k4m("sprinkled", 4, [(0, 4)])
    with pytest.raises(InputError):
        gen.k4m("pure", -1)
    with pytest.raises(InputError):
        gen.k4m("fancy", 4)


def test_sprinkled_k44_has_crossing_tetra_separations_with_empty_links():
    g = gen.k4m("sprinkled", 4, [(0, 1), (2, 3)])
    s = MixedSeparation(Z | {4, 5}, Z | {6, 7})
    t = MixedSeparation(Z | {4, 6}, Z | {5, 7})
    assert is_tetra_separation(g, s) and is_tetra_separation(g, t) and not is_nested(s, t)
    d = corner_diagram(g, s, t)
    assert all(not d.links[x] for x in "ABCD")


@pytest.mark.parametrize("kind,m", [("pure", 4), ("pure", 7), ("thickened", 4), ("thickened", 6)])
def test_k4m_for_m_at_least_4_is_4_connected(kind, m):
    g = gen.k4m(kind, m)
    assert is_k_connected(g, 4)
    w = recognize_k4m(g)
    assert w.left == (0, 1, 2, 3) and w.m == m


def test_k3m_recognized():
    w = recognize_k3m(gen.k3m("sprinkled", 4, [(0, 1)]))
    assert (w.kind, w.left, w.m) == ("sprinkled", (0, 1, 2), 4)


def test_cycle_of_graphs():
    g, ring = gen.cycle_of_graphs([gen.clique_piece(5)] * 6)
    assert len(g) == 18 and is_k_connected(g, 4)
    assert len(ring) == 6 and not ring.violations()
    g, ring = gen.cycle_of_graphs([gen.clique_piece(4), gen.triangle_piece()] * 3)
    assert not ring.violations()
    assert all(len(a) == 2 for a in ring.adhesions)


def test_cycle_of_graphs_errors():
    with pytest.raises(InputError):
        gen.cycle_of_graphs([gen.clique_piece(4)] * 2)
    with pytest.raises(InputError):
        gen.cycle_of_graphs([(complete_graph(4), (0, 1), (0, 1))] * 3)
    with pytest.raises(InputError):
        gen.cycle_of_graphs([(complete_graph(4), (0, 1), (2, 7))] * 3)


def test_wheels():
    w = gen.wheel(5)
    assert len(w) == 6 and w.degree(5) == 5
    assert is_k_connected(gen.generalised_wheel(["T", "K2", "T"]), 3)


@given(st.integers(5, 12), st.integers(0, 10**6))
def test_random_4_connected(n, seed):
    g = gen.random_4_connected(n, seed)
    assert len(g) == n and nx_k_connected(g, 4)
    assert g == gen.random_4_connected(n, seed)


@given(st.integers(4, 10), st.integers(0, 10**6))
def test_random_3_connected(n, seed):
    g = gen.random_3_connected(n, seed)
    assert len(g) == n and nx_k_connected(g, 3)
