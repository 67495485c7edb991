import math
from fractions import Fraction
from itertools import combinations

import pytest

import oracles
from homlab import (ArgumentError, CapacityError, DepthParam, Graph, TdColoring, chi_t_exact,
                    dvorak_threshold, girth, grade, low_td_coloring, odd_girth, shallow_top_minors, subdivide,
                    tree_depth)
from homlab._kernels import compiled_kernel, python_kernel
from homlab.canonical import canonical_code
from homlab.generators import all_graphs
from homlab.named import complete, complete_bipartite, cycle, edgeless, path, petersen, star
from homlab.ops import induced_substructure
from homlab.sparsity import greedy_td_coloring, td_table

INF = math.inf


class TestGirth:
    def test_examples(self):
        assert odd_girth(cycle(7)) == 7
        assert odd_girth(complete_bipartite(3, 3)) == INF
        assert odd_girth(petersen()) == 5 and girth(petersen()) == 5
        assert girth(path(5)) == INF

    def test_against_oracles(self):
        for g in all_graphs(6):
            assert girth(g) == oracles.girth(g)
            assert odd_girth(g) == oracles.odd_girth(g)


class TestTreeDepth:
    def test_examples(self):
        assert tree_depth(Graph(0)) == 0
        for n in range(1, 6):
            assert tree_depth(edgeless(n)) == 1
            assert tree_depth(complete(n)) == n
        assert tree_depth(path(4)) == 3
        assert tree_depth(path(7)) == 3
        assert tree_depth(star(5)) == 2

    def test_against_elimination_forests(self):
        for g in all_graphs(5):
            assert tree_depth(g) == oracles.tree_depth(g)

    def test_vertex_deletion(self):
        for g in all_graphs(6):
            td = tree_depth(g)
            for v in range(g.n):
                rest = induced_substructure(g, [x for x in range(g.n) if x != v])
                assert td - 1 <= tree_depth(rest) <= td

    def test_table_matches_memo(self):
        for g in all_graphs(5):
            table = td_table(g)
            adj = g.adj_masks
            for mask in range(1 << g.n):
                assert table[mask] == python_kernel.td_mask(adj, mask)

    @pytest.mark.skipif(compiled_kernel is None, reason="compiled kernel not built")
    def test_backends_agree(self):
        for g in all_graphs(6):
            adj = list(g.adj_masks)
            assert python_kernel.td_table(adj) == list(compiled_kernel.td_table(adj))
            full = (1 << g.n) - 1
            assert python_kernel.td_mask(adj, full) == compiled_kernel.td_mask(adj, full)

    def test_cap(self):
        with pytest.raises(CapacityError):
            tree_depth(cycle(15))

    def test_petersen(self):
        # every vertex removal leaves a connected graph containing C_8 plus chords
        assert tree_depth(petersen()) == 6


class TestShallowMinors:
    def test_depth_zero_is_subgraph(self):
        minors = shallow_top_minors(complete(4), DepthParam(0), 4)
        codes = {canonical_code(h) for h in minors}
        assert canonical_code(complete(4)) in codes
        # every graph on <= 4 vertices is a subgraph of K4
        assert len(minors) == 1 + 2 + 4 + 11

    def test_c6_contains_triangle_at_depth_one(self):
        codes = {canonical_code(h) for h in shallow_top_minors(cycle(6), DepthParam(1), 3)}
        assert canonical_code(complete(3)) in codes
        codes0 = {canonical_code(h) for h in shallow_top_minors(cycle(6), DepthParam(0), 3)}
        assert canonical_code(complete(3)) not in codes0

    def test_subdivided_k4(self):
        g = subdivide(complete(4), 2)
        assert any(canonical_code(h) == canonical_code(complete(4)) for h in shallow_top_minors(g, 2, 4))
        assert not any(canonical_code(h) == canonical_code(complete(4)) for h in shallow_top_minors(g, 1, 4))

    def test_depth_param(self):
        assert DepthParam.from_depth(Fraction(1, 2)).s == 1
        assert DepthParam.from_depth(2).s == 4
        with pytest.raises(ArgumentError):
            DepthParam(-1)

    def test_minors_by_bruteforce(self):
        # H is a shallow top minor iff some <= s-subdivision of H embeds in G
        from homlab import subdivide_general
        from itertools import product
        g = cycle(5)
        for s in (0, 1):
            got = {canonical_code(h) for h in shallow_top_minors(g, s, 3)}
            want = set()
            for h in all_graphs(3):
                for lens in product(range(1, s + 2), repeat=len(h.edges)):
                    sub = subdivide_general(h, dict(zip(h.edges, lens)))
                    if sub.n <= g.n and oracles.subgraph_iso(sub, g):
                        want.add(canonical_code(h))
                        break
            assert got == want


class TestGrades:
    def test_examples(self):
        assert grade(complete(4), 0, "avg_degree") == 3
        assert grade(cycle(6), 1, "omega") == 3
        assert grade(cycle(6), 0, "omega") == 2

    def test_trees(self):
        for g in all_graphs(6):
            if g.edges and len(g.edges) == g.n - 1 and girth(g) == INF:
                for s in (0, 1, 2):
                    assert grade(g, s, "omega") == 2

    def test_hierarchy(self):
        for g in all_graphs(5):
            for s in (0, 1, 2):
                om = grade(g, s, "omega")
                chi = grade(g, s, "chi")
                avg = grade(g, s, "avg_degree")
                assert om <= chi <= math.floor(avg) + 1

    def test_monotone_in_depth(self):
        for g in all_graphs(5):
            vals = [grade(g, s, "avg_degree") for s in (0, 1, 2)]
            assert vals == sorted(vals)

    def test_bad_measure(self):
        with pytest.raises(ArgumentError):
            grade(cycle(4), 0, "colour")


class TestLowTreeDepthColoring:
    def test_t1_is_chromatic(self):
        for g in all_graphs(6):
            assert chi_t_exact(g, 1) == oracles.chromatic(g)

    def test_p4(self):
        assert chi_t_exact(path(4), 2) == 3
        assert TdColoring(2, (0, 1, 2, 0)).is_valid(path(4))
        assert not TdColoring(2, (0, 1, 0, 1)).is_valid(path(4))

    def test_complete(self):
        for n in range(1, 6):
            for t in (1, 2, 3):
                assert chi_t_exact(complete(n), t) == n

    def test_monotone_in_t(self):
        for g in all_graphs(5):
            vals = [chi_t_exact(g, t) for t in (1, 2, 3, 4)]
            assert vals == sorted(vals)

    def test_minimum_by_bruteforce(self):
        from itertools import product
        for g in all_graphs(5):
            for t in (2, 3):
                k = chi_t_exact(g, t)
                assert not any(TdColoring(t, c).is_valid(g) for c in product(range(k - 1), repeat=g.n)) if k > 1 else True

    def test_returned_colorings_validate(self):
        for g in all_graphs(6):
            for t in (1, 2, 3):
                col = low_td_coloring(g, t)
                assert col.is_valid(g)
                classes = col.classes()
                for k in range(1, t + 1):
                    for sub in combinations(range(len(classes)), k):
                        verts = [v for v in range(g.n) if col.colors[v] in sub]
                        assert oracles.tree_depth(induced_substructure(g, verts)) <= k

    def test_greedy_valid_beyond_exact_caps(self):
        g = subdivide(complete(5), 1)
        for t in (2, 3):
            col = greedy_td_coloring(g, t)
            assert col.is_valid(g)
        big = low_td_coloring(cycle(12), 2)
        assert big.is_valid(cycle(12))

    def test_caps(self):
        with pytest.raises(CapacityError):
            chi_t_exact(cycle(11), 2)
        with pytest.raises(ArgumentError):
            chi_t_exact(cycle(4), 0)


class TestDvorak:
    def test_value_at_four(self):
        assert dvorak_threshold(4) == pytest.approx(1924.7, abs=0.1)
        independent = 504 * math.log(3) / (math.log(4) - math.log(3))
        assert dvorak_threshold(4) == pytest.approx(independent, rel=1e-9)

    def test_increasing(self):
        vals = [dvorak_threshold(c) for c in range(4, 65)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_growth(self):
        # log(c-1)/(log c - log(c-1)) ~ c log c, so the threshold grows like 56 c^3 log c
        c = 1000
        assert dvorak_threshold(c) / (c ** 3 * math.log(c)) == pytest.approx(56, rel=0.1)
        assert dvorak_threshold(c) / c ** 3 > 56 * 5

    def test_domain(self):
        with pytest.raises(ArgumentError):
            dvorak_threshold(3)
