"""Acceptance criteria 1-11, one test each, each printing a PASS/FAIL line."""

import random
from itertools import combinations

import networkx as nx
import pytest

from corpus import c4_bag_cycle, four_connected_corpus, k4_ring, k5_ring, small, three_connected_corpus
from oracles import (
    brute_strict_tri,
    brute_tetra,
    brute_totally_nested,
    diagram_oracle,
    independent_paths,
    is_trivial_tri,
    nested,
    nx_k_connected,
    order_of,
    quasi_k_connected,
    separators_of_size,
    to_nx,
    mixed_separations,
    tri_separations,
)
from test_separations import check_potter_by_definition
from tetradecomp import generators as gen
from tetradecomp.connectivity import is_quasi_k_connected, max_independent_paths
from tetradecomp.decomposition import build_decomposition, decomposition_signature, relabel_decomposition
from tetradecomp.graph import Graph, apply_relabeling, delete_vertices
from tetradecomp.pipeline import (
    apex_lift,
    strict_tri_separations,
    tri_decompose,
    trisep_refinement_check,
    verify_tri_class,
    ydelta,
)
from tetradecomp.recognizers import (
    alpha_factor,
    all_torsos_bad,
    classify_4_angry,
    classify_torso,
    tutte_bagel_torso,
    verify_torso_class,
)
from tetradecomp.separations import MixedSeparation, corner_diagram, crossing_classification
from tetradecomp.tetra import (
    enumerate_tetra_separations,
    is_4_angry,
    is_tetra_separation,
    left_right_reduction,
    reduction_characterization,
    totally_nested_set,
)
from tetradecomp.decomposition import splitting_stars


@pytest.fixture
def report(capsys):
    def emit(number, title, check):
        try:
            check()
        except BaseException:
            with capsys.disabled():
                print(f"\ncriterion {number:2d}: FAIL  {title}")
            raise
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: PASS  {title}")
    return emit


def four_connected_or_k4(t):
    return nx_k_connected(t, 4) or (len(t) == 4 and t.size() == 6)


# 1 ---------------------------------------------------------------------------------

def test_criterion_1_totally_nested_oracle_equals_characterization(report):
    def check():
        corpus = four_connected_corpus()
        assert len(corpus) >= 200 and sum(name.startswith("rnd") for name, _ in corpus) >= 100
        for name, g in corpus:
            assert len(g) <= 14 and nx_k_connected(g, 4), name
            oracle = totally_nested_set(g, "oracle")
            characterization = totally_nested_set(g, "characterization")
            assert oracle == characterization, name
        # the enumeration behind both routes agrees with brute force on the small graphs
        for name, g in small(corpus, 9):
            brute = brute_tetra(g)
            assert set(enumerate_tetra_separations(g)) == brute, name
            assert set(totally_nested_set(g, "oracle")) == brute_totally_nested(brute), name
    report(1, "totally-nested by oracle == by external 5-connectivity on 211 graphs", check)


# 2 ---------------------------------------------------------------------------------

def test_criterion_2_crossing_lemma(report):
    def check():
        pairs = potter = 0
        for name, g in small(four_connected_corpus(), 12):
            tetras = enumerate_tetra_separations(g)
            for i, s in enumerate(tetras):
                for t in tetras[i + 1:]:
                    if nested(s, t):
                        continue
                    pairs += 1
                    o = diagram_oracle(g, s, t)
                    ell = o["links"]["A"]
                    assert set(o["links"].values()) == {ell} and ell in (0, 1, 2), (name, s, t)
                    assert o["centre"] == 4 - 2 * ell, (name, s, t)
                    assert not o["diagonal"] and not o["jumping"], (name, s, t)
                    d = corner_diagram(g, s, t)
                    lib_ell, evidence = crossing_classification(d, check_preconditions=False)
                    assert lib_ell == ell
                    if d.dangling:
                        assert ell == 2 and evidence["potter_corners"]
                        for corner in evidence["potter_corners"]:
                            assert check_potter_by_definition(d, corner)
                        potter += 1
        assert pairs > 100000
    report(2, "crossing lemma on every crossing pair with |V| <= 12", check)


# 3 ---------------------------------------------------------------------------------

def test_criterion_3_every_torso_classifies(report):
    def check():
        stars = 0
        for name, g in four_connected_corpus():
            nested_set = totally_nested_set(g)
            tetras = enumerate_tetra_separations(g)
            for star in splitting_stars(nested_set):
                tc = classify_torso(g, star, nested_set, tetras)
                assert not verify_torso_class(tc), (name, tc.verdict)
                assert four_connected_or_k4(tc.torso.torso), name
                stars += 1
        assert stars >= 300
    report(3, "classify_torso on every splitting star, witnesses re-check, torsos 4-connected or K4", check)


# 4 ---------------------------------------------------------------------------------

def test_criterion_4_reduction_characterization(report):
    def check():
        count = 0
        for name, g in small(four_connected_corpus(), 10):
            for s in mixed_separations(g, 4, proper=False):
                if order_of(g, s.a, s.b) != 4:
                    continue
                direct = is_tetra_separation(g, left_right_reduction(g, s))
                assert reduction_characterization(g, s) == direct, (name, s)
                count += 1
        assert count > 40000
    report(4, "three-condition predicate == direct test of the left-right-reduction", check)


# 5 ---------------------------------------------------------------------------------

def complement_shapes(n):
    """Graphs on n vertices with maximum degree <= 2, one per isomorphism class.

    Such a graph is a disjoint union of paths and cycles, so the multiset of
    its component types is a complete invariant.
    """
    kinds = [("P", k) for k in range(1, n + 1)] + [("C", k) for k in range(3, n + 1)]

    def rec(remaining, start):
        if remaining == 0:
            yield []
            return
        for i in range(start, len(kinds)):
            if kinds[i][1] <= remaining:
                for rest in rec(remaining - kinds[i][1], i):
                    yield [kinds[i]] + rest
    for parts in rec(n, 0):
        edges, base = [], 0
        for kind, k in parts:
            edges += [(base + j, base + j + 1) for j in range(k - 1)]
            if kind == "C":
                edges.append((base, base + k - 1))
            base += k
        yield Graph(range(n), edges)


def test_criterion_5_quasi_5_connectivity_equivalence(report):
    def check():
        for name, g in four_connected_corpus():
            if len(g) >= 8:
                no_tetra = not enumerate_tetra_separations(g)
                assert no_tetra == is_quasi_k_connected(g, 5), name
                if len(g) <= 10:
                    assert is_quasi_k_connected(g, 5) == quasi_k_connected(g, 5), name
        boundary = []
        for comp in complement_shapes(7):
            g = Graph(range(7), nx.complement(to_nx(comp)).edges)
            if nx_k_connected(g, 4) and quasi_k_connected(g, 5) and brute_tetra(g):
                boundary.append(g)
        assert boundary
        for g in boundary:
            assert is_quasi_k_connected(g, 5) and enumerate_tetra_separations(g)
    report(5, "|V| >= 8: no tetra-separation iff quasi-5-connected; a 7-vertex exception exists", check)


# 6 ---------------------------------------------------------------------------------

def shape_instances():
    # three K5s in a ring have no tetra-separation at all, so they are quasi-5-connected
    out = {1: [gen.circular_saw(n, 4) for n in (10, 11, 12)] + [k5_ring(3)],
           2: [k5_ring(4), k5_ring(5), k4_ring(4), k4_ring(5)],
           3: [gen.double_wheel(r, h) for r in (6, 7, 8) for h in (False, True)]
           + [gen.double_wheel_of_triangles(r) for r in (4, 5)],
           4: [gen.k4m("pure", m) for m in (4, 5, 6)] + [gen.k4m("sprinkled", 5, [(0, 1), (2, 3)])]
           + [gen.k4m("thickened", 4)]}
    return out


def verify_shape(g, shape, witness):
    if shape == 1:
        return quasi_k_connected(g, 5)
    if shape == 2:
        return (not witness.violations() and witness.host == g and witness.adhesion_size == 2
                and all(tutte_bagel_torso(t) for t in witness.torsos())
                and all_torsos_bad(witness) and alpha_factor(witness) >= 4)
    if shape == 3:
        ring = witness.ring
        return (not ring.violations() and ring.host == delete_vertices(g, witness.centre) and len(ring) >= 4
                and (witness.all_k2 or witness.all_triangles))
    if shape == 4:
        left = set(witness.left)
        return witness.m >= 4 and all(g.neighbours(v) == left for v in g.vertices if v not in left)
    return False


def test_criterion_6_angry_theorem(report):
    def check():
        for shape, graphs in shape_instances().items():
            for g in graphs:
                assert len(g) >= 8 and is_4_angry(g)
                verdict = classify_4_angry(g)
                assert verdict.angry and shape in verdict.shapes, (shape, verdict.shapes)
                assert verify_shape(g, shape, verdict.witnesses[shape])
        angry = 0
        for name, g in four_connected_corpus():
            if len(g) < 8:
                continue
            verdict = classify_4_angry(g)
            assert verdict.angry == is_4_angry(g) == (not totally_nested_set(g)), name
            if verdict.angry:
                angry += 1
                assert verdict.shapes, name
                for shape in verdict.shapes:
                    assert verify_shape(g, shape, verdict.witnesses[shape]), (name, shape)
        assert angry >= 50
    report(6, "shape instances are 4-angry; every 4-angry corpus graph matches a verified shape", check)


# 7 ---------------------------------------------------------------------------------

def test_criterion_7_circular_saws(report):
    def check():
        rng = random.Random(7)
        for k in (3, 4, 5):
            n = 3 * k
            g = gen.circular_saw(n, k)
            assert nx_k_connected(g, k)
            neighbourhoods = {frozenset(g.neighbours(v)) for v in g.vertices}
            assert separators_of_size(g, k) == neighbourhoods
            saw_edges = [(v, gen.saw_vertex(n, v + i, 1)) for v in range(n) for i in range(k)]
            sampled = 0
            while sampled < 20:
                (a, a2), (b, b2) = rng.sample(saw_edges, 2)
                if {a, a2} & {b, b2} or any(g.has_edge(x, y) for x in (a, a2) for y in (b, b2)):
                    continue
                x = (g.neighbours(a) | g.neighbours(a2)) - {a, a2}
                y = (g.neighbours(b) | g.neighbours(b2)) - {b, b2}
                h = to_nx(delete_vertices(g, (a, a2, b, b2)))
                h.add_edges_from([("s", v) for v in x] + [(v, "t") for v in y])
                disjoint = len(list(nx.node_disjoint_paths(h, "s", "t"))) + len(x & y)
                assert disjoint >= 2 * (k - 1), (k, a, a2, b, b2)
                if not x & y:
                    assert max_independent_paths(g, x, y)[0] >= 2 * (k - 1)
                    assert independent_paths(g, x, y) >= 2 * (k - 1)
                sampled += 1
    report(7, "saws (3k, k), k = 3, 4, 5: connectivity, separators, 2(k-1) paths", check)


# 8 ---------------------------------------------------------------------------------

def test_criterion_8_ydelta(report):
    def check():
        checked, k4_outputs = 0, []
        for name, g in four_connected_corpus() + three_connected_corpus():
            if 7 <= len(g) <= 14 and quasi_k_connected(g, 4):
                result = ydelta(g).result
                assert four_connected_or_k4(result), name
                if not nx_k_connected(result, 4):
                    k4_outputs.append(name)
                checked += 1
        assert checked >= 100
        # the generalised wheel on three triangles loses its three degree-3 rim vertices and leaves a K4
        assert k4_outputs == ["gwTTT"]
        example = ydelta(c4_bag_cycle()).result
        assert nx_k_connected(example, 3) and not quasi_k_connected(example, 4)
    report(8, "Y-Delta of quasi-4-connected graphs on 7..14 vertices is 4-connected; the 6-vertex example fails", check)


# 9 ---------------------------------------------------------------------------------

def test_criterion_9_three_connected_corollary(report):
    def check():
        for name, g in three_connected_corpus():
            dec = tri_decompose(g)
            for tc in dec.classes:
                assert not verify_tri_class(g, tc), (name, tc.verdict)
            lifted, alpha = apex_lift(g)
            assert nx_k_connected(lifted, 4)
            tris = strict_tri_separations(g)
            if len(g) <= 10:
                assert set(tris) == brute_strict_tri(g), name
            push = {s: MixedSeparation(s.a | {alpha}, s.b | {alpha}) for s in tris}
            assert set(push.values()) == set(enumerate_tetra_separations(lifted)), name
            for s, t in combinations(tris, 2):
                assert nested(s, t) == nested(push[s], push[t]), name
            assert set(dec.nested) == brute_totally_nested(tris), name
    report(9, "tri_decompose torsos verify; apex bijection preserves nestedness", check)


# 10 --------------------------------------------------------------------------------

def test_criterion_10_canonicity(report):
    def check():
        corpus = small(four_connected_corpus(), 12)
        graphs = corpus[:: max(1, len(corpus) // 20)][:20]
        assert len(graphs) == 20
        rng = random.Random(10)
        for name, g in graphs:
            n_g = totally_nested_set(g)
            dec_g = build_decomposition(g, n_g)
            for _ in range(50):
                perm = list(range(100, 100 + len(g)))
                rng.shuffle(perm)
                pi = dict(zip(g.vertices, perm))
                h = apply_relabeling(g, pi)
                n_h = totally_nested_set(h)
                assert set(n_h) == {s.relabel(pi) for s in n_g}, name
                assert decomposition_signature(build_decomposition(h, n_h)) == relabel_decomposition(dec_g, pi), name
    report(10, "50 relabelings of each of 20 graphs: N and the decomposition follow the relabeling", check)


# 11 --------------------------------------------------------------------------------

def test_criterion_11_tri_separations_refine(report):
    def check():
        for matching in (False, True):
            verdicts = {"reduces": 0, "negligible": 0}
            for name, g in small(three_connected_corpus(), 10):
                tris = tri_separations(g, matching)
                strict_nested = brute_totally_nested(brute_strict_tri(g))
                for t in brute_totally_nested(tris):
                    if is_trivial_tri(g, t):
                        continue
                    verdict = trisep_refinement_check(g, t, sorted(strict_nested, key=MixedSeparation.sort_key))
                    if verdict == "reduces":
                        assert left_right_reduction(g, t) in strict_nested
                    else:
                        assert len(t.a - t.b) <= 1 or len(t.b - t.a) <= 1
                    verdicts[verdict] += 1
            assert sum(verdicts.values()) >= 100
    report(11, "totally-nested non-trivial tri-separations reduce or are negligible", check)
