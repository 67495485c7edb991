import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from homlab import (ArgumentError, CapacityError, Digraph, Graph, Homomorphism, Signature, SignatureMismatch,
                    Structure, canonical_code, categorical_product, disjoint_union, gaifman, identify_vertices,
                    incidence, induced_substructure, pre_set, subdivide, subdivide_general)
from homlab.generators import all_graphs
from homlab.named import complete, cycle, edgeless, path, petersen
from homlab.ops import components, relabel
from homlab.sparsity import is_bipartite, odd_girth

TERNARY = Signature([("R", 3)])


def graphs_st(max_n=7):
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_n))
        pairs = list(combinations(range(n), 2))
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph(n, chosen)
    return build()


class TestTypes:
    def test_signature_rejects_duplicates_and_bad_arity(self):
        with pytest.raises(ArgumentError):
            Signature([("R", 2), ("R", 3)])
        with pytest.raises(ArgumentError):
            Signature([("R", 0)])
        with pytest.raises(ArgumentError):
            Signature([("R", 9)])

    def test_graph_rejects_loops_and_out_of_range(self):
        with pytest.raises(ArgumentError):
            Graph(2, [(1, 1)])
        with pytest.raises(ArgumentError):
            Graph(2, [(0, 2)])

    def test_graph_collapses_parallel_edges(self):
        g = Graph(2, [(0, 1), (1, 0)])
        assert g.edges == ((0, 1),)
        assert g.tuples("E") == {(0, 1), (1, 0)}

    def test_digraph_keeps_orientation(self):
        d = Digraph(2, [(0, 1)])
        assert d.tuples("E") == {(0, 1)}
        with pytest.raises(ArgumentError):
            Digraph(1, [(0, 0)])

    def test_structure_tuple_validation(self):
        with pytest.raises(ArgumentError):
            Structure(TERNARY, 2, {"R": [(0, 1)]})
        with pytest.raises(ArgumentError):
            Structure(TERNARY, 2, {"R": [(0, 1, 2)]})

    def test_blocks(self):
        s = Structure(TERNARY, 3, {"R": [(0, 1, 2)]})
        assert [b.tuple for b in s.blocks()] == [(0, 1, 2)]

    def test_homomorphism_validity(self):
        h = Homomorphism(cycle(4), complete(2), (0, 1, 0, 1))
        assert h.is_valid()
        assert not Homomorphism(cycle(3), complete(2), (0, 1, 0)).is_valid()


class TestSubdivide:
    def test_k3_once_is_c6(self):
        assert oracles.isomorphic(subdivide(complete(3), 1), cycle(6))

    def test_zero_is_identity(self):
        assert subdivide(petersen(), 0) == petersen()

    def test_k4_twice_counts(self):
        g = subdivide(complete(4), 2)
        assert (g.n, len(g.edges)) == (16, 18)

    def test_branching_vertices_keep_ids(self):
        g = subdivide(complete(3), 2)
        assert all(g.degree(v) == 2 for v in range(3))
        assert not any(g.has_edge(u, v) for u, v in combinations(range(3), 2))

    def test_general_lengths(self):
        assert oracles.isomorphic(subdivide_general(cycle(3), {e: 2 for e in cycle(3).edges}), cycle(6))
        e1, e2, e3 = cycle(3).edges
        assert oracles.isomorphic(subdivide_general(cycle(3), {e1: 2, e2: 1, e3: 1}), cycle(4))
        assert oracles.isomorphic(subdivide_general(complete(2), {(0, 1): 3}), path(4))

    def test_general_missing_length(self):
        with pytest.raises(ArgumentError):
            subdivide_general(cycle(3), {(0, 1): 2})

    def test_budget(self):
        with pytest.raises(CapacityError):
            subdivide(complete(4), 5, budget=20)

    @pytest.mark.parametrize("k", [1, 3])
    def test_odd_subdivision_is_bipartite(self, k):
        for g in all_graphs(5):
            assert is_bipartite(subdivide(g, k))

    def test_even_subdivision_scales_odd_girth(self):
        for g in all_graphs(6):
            og = oracles.odd_girth(g)
            if og == float("inf"):
                continue
            for p in (1, 2):
                assert odd_girth(subdivide(g, 2 * p)) == (2 * p + 1) * og


class TestUnion:
    def test_points(self):
        u = disjoint_union(complete(1), complete(1))
        assert u == edgeless(2)

    def test_components_add(self):
        u = disjoint_union(cycle(3), cycle(5))
        assert u.n == 8 and len(components(u)) == 2

    def test_parts_embed_induced(self):
        a, b = path(3), cycle(4)
        u = disjoint_union(a, b)
        assert induced_substructure(u, range(3)) == a
        assert induced_substructure(u, range(3, 7)) == b

    def test_signature_mismatch(self):
        with pytest.raises(SignatureMismatch):
            disjoint_union(complete(2), Structure(TERNARY, 1))


class TestIdentification:
    def test_same_vertex_rejected(self):
        with pytest.raises(ArgumentError):
            identify_vertices(path(3), 1, 1)

    def test_pre_k2(self):
        assert pre_set(complete(2)) == [complete(1)]

    def test_pre_p3_against_bruteforce(self):
        # every pair of P3 collapses to K2 once the loop is dropped
        keys = {oracles.graph_key(h.n, h.edges) for h in
                (identify_vertices(path(3), u, v) for u, v in combinations(range(3), 2))}
        assert len(keys) == 1
        assert len(pre_set(path(3))) == len(keys)

    def test_pre_set_matches_bruteforce_classes(self):
        for g in all_graphs(5):
            keys = {oracles.graph_key(h.n, h.edges)
                    for h in (identify_vertices(g, u, v) for u, v in combinations(range(g.n), 2))}
            assert len(pre_set(g)) == len(keys)

    def test_pre_decomposition_small(self):
        graphs = all_graphs(4)
        for f in graphs:
            pres = pre_set(f, keep_loops=True)
            for g in graphs:
                lhs = oracles.hom_exists(f, g)
                rhs = oracles.subgraph_iso(f, g) or any(oracles.hom_exists(h, g) for h in pres)
                assert lhs == rhs

    def test_loop_dropping_breaks_the_decomposition(self):
        # K2 -/-> K1, yet its loop-free identification K1 maps to K1
        assert pre_set(complete(2)) == [complete(1)]
        assert not oracles.hom_exists(complete(2), complete(1))

    def test_keep_loops_marks_adjacent_merges(self):
        pres = pre_set(path(3), keep_loops=True)
        assert len(pres) == 2
        assert sum(1 for h in pres if isinstance(h, Graph)) == 1
        for h in pres:
            assert oracles.hom_exists(path(3), h)


class TestProduct:
    def test_k2_squared(self):
        p = categorical_product(complete(2), complete(2))
        assert p.n == 4 and len(p.edges) == 2 and len(components(p)) == 2

    def test_with_point(self):
        assert categorical_product(petersen(), complete(1)) == edgeless(10)

    def test_universal_property(self):
        small = all_graphs(3)
        xs = all_graphs(4)
        for a in small:
            for b in small:
                p = categorical_product(a, b)
                for x in xs:
                    assert oracles.hom_exists(x, p) == (oracles.hom_exists(x, a) and oracles.hom_exists(x, b))

    def test_budget(self):
        with pytest.raises(CapacityError):
            categorical_product(complete(5), complete(5), budget=10)


class TestDerivedGraphs:
    def test_gaifman_ternary_triangle(self):
        s = Structure(TERNARY, 3, {"R": [(0, 1, 2)]})
        assert gaifman(s) == complete(3)

    def test_gaifman_of_graph(self):
        assert gaifman(petersen()) == petersen()

    def test_gaifman_binary_path(self):
        s = Structure(Signature([("R", 2)]), 3, {"R": [(0, 1), (1, 2)]})
        assert gaifman(s) == path(3)

    def test_gaifman_ignores_unary(self):
        s = Structure(Signature([("U", 1), ("R", 2)]), 2, {"U": [(0,)], "R": [(0, 1)]})
        assert gaifman(s) == complete(2)

    def test_gaifman_depends_on_blocks_only(self):
        # reordering entries inside a block leaves the Gaifman graph unchanged
        s1 = Structure(TERNARY, 4, {"R": [(0, 1, 2), (2, 3, 3)]})
        s2 = Structure(TERNARY, 4, {"R": [(2, 0, 1), (3, 2, 3)]})
        assert gaifman(s1) == gaifman(s2)

    def test_incidence_ternary_star(self):
        s = Structure(TERNARY, 3, {"R": [(0, 1, 2)]})
        g = incidence(s)
        assert g.n == 4 and g.degree(3) == 3

    def test_incidence_empty(self):
        assert incidence(Structure(TERNARY, 3)) == edgeless(3)

    def test_incidence_of_graph_is_one_subdivision(self):
        for g in all_graphs(5):
            inc, sub = incidence(g), subdivide(g, 1)
            assert canonical_code(inc, cap=None) == canonical_code(sub, cap=None)
            if g.n <= 4:
                assert oracles.isomorphic(inc, sub)

    def test_induced_full_and_pair(self):
        g = petersen()
        assert induced_substructure(g, range(g.n)) == g
        assert induced_substructure(complete(3), [0, 1]) == complete(2)

    def test_induced_c5_four_vertices(self):
        for subset in combinations(range(5), 4):
            h = induced_substructure(cycle(5), subset)
            assert oracles.isomorphic(h, path(4))

    def test_induced_out_of_range(self):
        with pytest.raises(ArgumentError):
            induced_substructure(path(3), [0, 3])


class TestCanonical:
    def test_c5_two_labelings(self):
        a = cycle(5)
        b = relabel(a, [2, 4, 1, 0, 3])
        assert canonical_code(a) == canonical_code(b)

    def test_c5_vs_p5(self):
        assert canonical_code(cycle(5)) != canonical_code(path(5))

    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
    def test_census(self, n, count):
        pairs = list(combinations(range(n), 2))
        codes = set()
        for mask in range(1 << len(pairs)):
            codes.add(canonical_code(Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])))
        assert len(codes) == count == oracles.iso_classes(n)

    def test_cap(self):
        with pytest.raises(CapacityError):
            canonical_code(complete(11))

    @settings(max_examples=150, deadline=None)
    @given(graphs_st(8), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert canonical_code(relabel(g, perm)) == canonical_code(g)

    @settings(max_examples=60, deadline=None)
    @given(graphs_st(5), graphs_st(5))
    def test_equal_codes_iff_isomorphic(self, a, b):
        assert (canonical_code(a) == canonical_code(b)) == oracles.isomorphic(a, b)

    def test_structures_with_ternary_relation(self):
        rnd = random.Random(7)
        for _ in range(30):
            ts = {tuple(rnd.randrange(5) for _ in range(3)) for _ in range(4)}
            s = Structure(TERNARY, 5, {"R": ts})
            perm = list(range(5))
            rnd.shuffle(perm)
            t = relabel(s, perm)
            assert canonical_code(s) == canonical_code(t)
