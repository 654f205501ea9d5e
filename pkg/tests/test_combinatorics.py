import math
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaingraph.combinatorics import (
    char_coeffs_combinatorial,
    count_cycles,
    determinant_combinatorial,
    enumerate_cycles,
    enumerate_elementary_subgraphs,
    matching_count,
    matching_number,
    matching_table,
    perm_coeffs_combinatorial,
    permanent_combinatorial,
    star_alpha,
    star_of_triangles_closed_form,
    sum_re_cycles,
    unicyclic_char_poly,
    unicyclic_determinant,
    unicyclic_perm_poly,
    unicyclic_permanent,
    unicyclic_structure,
)
from gaingraph.core import GainGraphError, build_graph
from gaingraph.errors import CapExceededError
from gaingraph.families import (
    bowtie_pair,
    complete,
    cycle,
    k4_uniform_triangles,
    path,
    random_gnp,
    random_tree,
    random_unicyclic,
    i_triangle,
    star_of_triangles,
)
from gaingraph.linalg import adjacency_matrix, char_poly_numeric, perm_poly_numeric, permanent_naive
from oracles import (
    char_coeffs_brute,
    cycle_gain_from_edges,
    cycles_brute,
    elementary_edge_sets,
    matchings_brute,
)


def perm_coeffs_brute(graph):
    a = adjacency_matrix(graph)
    coeffs = [1.0]
    for i in range(1, graph.n + 1):
        total = sum(permanent_naive(a[np.ix_(s, s)]) for s in map(list, combinations(range(graph.n), i)))
        coeffs.append(((-1) ** i * total).real)
    return coeffs


def small_graphs(count, seed, n_max=7, p=0.5):
    rng = np.random.default_rng(seed)
    return [random_gnp(int(rng.integers(1, n_max + 1)), p, rng) for _ in range(count)]


class TestElementarySubgraphs:
    def test_counts_match_edge_subset_oracle(self):
        for g in small_graphs(30, 0):
            expected = Counter(len(verts) for verts, _, _ in elementary_edge_sets(g))
            for i in range(g.n + 1):
                assert sum(1 for _ in enumerate_elementary_subgraphs(g, i)) == expected.get(i, 0)

    def test_same_structures_as_oracle(self):
        for g in small_graphs(15, 1, n_max=6, p=0.7):
            ours = set()
            for i in range(g.n + 1):
                for h in enumerate_elementary_subgraphs(g, i):
                    edges = set(h.k2_edges)
                    for cyc in h.cycles:
                        edges |= {tuple(sorted((cyc[j], cyc[(j + 1) % len(cyc)]))) for j in range(len(cyc))}
                    ours.add(frozenset(edges))
            ref = set()
            for _, k2, cycles in elementary_edge_sets(g):
                ref.add(frozenset(k2) | frozenset(e for c in cycles for e in c))
            assert ours == ref

    def test_small_sizes(self):
        g = complete(5)
        assert sum(1 for _ in enumerate_elementary_subgraphs(g, 2)) == g.m
        assert sum(1 for _ in enumerate_elementary_subgraphs(g, 3)) == 10
        assert [h.size for h in enumerate_elementary_subgraphs(g, 0)] == [0]

    def test_attributes(self):
        h = next(enumerate_elementary_subgraphs(i_triangle(), 3))
        assert (h.p, h.c, h.vertices) == (1, 1, frozenset({0, 1, 2}))
        assert h.cycle_real_parts(i_triangle()) == [0.0]

    def test_bowtie_size_four(self):
        # only pairs of disjoint edges fit in four vertices; there are five
        phi1, _ = bowtie_pair()
        assert sum(1 for _ in enumerate_elementary_subgraphs(phi1, 4)) == 5

    def test_bad_size_and_cap(self):
        with pytest.raises(ValueError):
            list(enumerate_elementary_subgraphs(path(3), 4))
        with pytest.raises(CapExceededError):
            list(enumerate_elementary_subgraphs(path(15), 2))


class TestCoefficients:
    def test_char_coeffs_vs_principal_minors(self):
        for g in small_graphs(25, 2, n_max=6, p=0.6):
            assert char_coeffs_combinatorial(g).max_abs_diff(char_coeffs_brute(g)) < 1e-10

    def test_perm_coeffs_vs_naive_permanents(self):
        for g in small_graphs(25, 3, n_max=6, p=0.6):
            assert perm_coeffs_combinatorial(g).max_abs_diff(perm_coeffs_brute(g)) < 1e-10

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 9), st.floats(0.1, 1.0), st.integers(0, 2**32 - 1))
    def test_numeric_paths_agree(self, n, p, seed):
        g = random_gnp(n, p, np.random.default_rng(seed))
        assert char_coeffs_combinatorial(g).max_abs_diff(char_poly_numeric(g)) < 1e-8
        assert perm_coeffs_combinatorial(g).max_abs_diff(perm_poly_numeric(g)) < 1e-8

    @pytest.mark.parametrize("theta", [0.0, 1 / 3, 0.5, 2.0 / math.pi])
    def test_k4_closed_form(self, theta):
        c = math.cos(math.pi * theta)
        expected = [1, 0, -6, -8 * c, 1 - 4 * c * c]
        g = k4_uniform_triangles(theta)
        assert char_coeffs_combinatorial(g).max_abs_diff(expected) < 1e-12
        assert char_poly_numeric(g).max_abs_diff(expected) < 1e-9

    def test_bowtie(self):
        for g in bowtie_pair():
            assert char_coeffs_combinatorial(g).max_abs_diff([1, 0, -6, -2, 5, 2]) < 1e-12
            assert char_coeffs_brute(g)[4] == pytest.approx(5, abs=1e-10)

    def test_determinant_and_permanent(self):
        g = i_triangle()
        assert determinant_combinatorial(g) == pytest.approx(0.0, abs=1e-12)
        # the two orientations of the triangle contribute i and -i
        assert permanent_combinatorial(g) == pytest.approx(0.0, abs=1e-12)
        assert determinant_combinatorial(complete(3)) == pytest.approx(2.0)
        assert permanent_combinatorial(complete(3)) == pytest.approx(2.0)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            char_coeffs_combinatorial(path(15))


class TestMatchings:
    def test_against_brute_force(self):
        for g in small_graphs(30, 4, n_max=8, p=0.5):
            for k in range(g.n // 2 + 2):
                assert matching_count(g, k) == matchings_brute(g, k)

    def test_known_values(self):
        assert matching_table(path(4)) == [1, 3, 1]
        assert matching_table(complete(4)) == [1, 6, 3]
        assert matching_number(cycle(5)) == 2
        assert matching_count(path(3), 0) == 1
        assert matching_count(path(3), 5) == 0
        assert matching_table(build_graph(1, [])) == [1]

    def test_gains_ignored(self):
        g = random_gnp(8, 0.5, np.random.default_rng(5))
        assert matching_table(g) == matching_table(g.underlying())


class TestCycles:
    def test_cycle_counts_and_sums_vs_oracle(self):
        for g in small_graphs(25, 6, n_max=7, p=0.6):
            for length in range(3, g.n + 1):
                ref = cycles_brute(g, length)
                assert count_cycles(g, length) == len(ref)
                want = sum(cycle_gain_from_edges(g, c).real for c in ref)
                assert sum_re_cycles(g, length) == pytest.approx(want, abs=1e-10)

    def test_enumerate_cycles_orientation(self):
        cycles = list(enumerate_cycles(i_triangle(), 3))
        assert len(cycles) == 1
        path_, theta = cycles[0]
        assert path_[0] == 0 and path_[1] < path_[-1]
        assert theta == pytest.approx(0.5)

    def test_complete_graph_counts(self):
        g = complete(6)
        assert count_cycles(g, 3) == 20
        assert count_cycles(g, 4) == 45
        assert count_cycles(g, 6) == 60


class TestTrees:
    def test_tree_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            t = random_tree(int(rng.integers(1, 13)), rng)
            g = t.underlying()
            assert char_coeffs_combinatorial(t).max_abs_diff(char_coeffs_combinatorial(g)) < 1e-10
            assert perm_coeffs_combinatorial(t).max_abs_diff(perm_coeffs_combinatorial(g)) < 1e-10

    def test_path_polynomial(self):
        # P4: x^4 - 3x^2 + 1 and x^4 + 3x^2 + 1
        assert char_coeffs_combinatorial(path(4)).tolist() == [1, 0, -3, 0, 1]
        assert perm_coeffs_combinatorial(path(4)).tolist() == [1, 0, 3, 0, 1]


class TestUnicyclic:
    def test_structure(self):
        g = build_graph(6, [(0, 1, 0.2), (1, 2, 0.3), (2, 0, -0.1), (2, 3, 0.7), (3, 4, 0), (3, 5, 0)])
        info = unicyclic_structure(g)
        assert sorted(info.cycle) == [0, 1, 2]
        assert info.theta_pi == pytest.approx(0.4)
        assert info.rest.n == 3
        assert info.matchings == (1, 2)

    def test_rejects_non_unicyclic(self):
        with pytest.raises(GainGraphError):
            unicyclic_structure(path(4))
        with pytest.raises(GainGraphError):
            unicyclic_structure(complete(4))

    def test_formulas_random(self):
        rng = np.random.default_rng(8)
        for _ in range(40):
            g = random_unicyclic(int(rng.integers(3, 13)), rng)
            assert unicyclic_char_poly(g).max_abs_diff(char_coeffs_combinatorial(g)) < 1e-10
            assert unicyclic_perm_poly(g).max_abs_diff(perm_coeffs_combinatorial(g)) < 1e-10
            assert unicyclic_determinant(g) == pytest.approx(determinant_combinatorial(g), abs=1e-10)
            assert unicyclic_permanent(g) == pytest.approx(permanent_combinatorial(g), abs=1e-10)

    def test_pure_cycles(self):
        # C_m alone: G - C is empty so k = 0 and 2k = n - m always
        for m in range(3, 9):
            g = cycle(m).with_gains([0.3] + [0.0] * (m - 1))
            assert unicyclic_determinant(g) == pytest.approx(determinant_combinatorial(g), abs=1e-10)
            assert unicyclic_permanent(g) == pytest.approx(permanent_combinatorial(g), abs=1e-10)

    def test_c5_pendant(self):
        # 2k != n - m: pendant vertex leaves G - C with one isolated vertex
        g = build_graph(6, [(i, (i + 1) % 5, 0.0) for i in range(4)] + [(4, 0, 0.5), (0, 5, 0.0)])
        info = unicyclic_structure(g)
        assert 2 * info.k != g.n - info.length
        assert unicyclic_determinant(g) == pytest.approx(determinant_combinatorial(g.underlying()), abs=1e-12)


class TestStarOfTriangles:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_closed_form(self, m):
        rng = np.random.default_rng(m)
        for _ in range(5):
            thetas = [float(t) for t in rng.uniform(-1, 1, size=m)]
            g = star_of_triangles(m, thetas)
            a, b = star_of_triangles_closed_form(thetas)
            assert char_coeffs_combinatorial(g).max_abs_diff(a) < 1e-10
            assert perm_coeffs_combinatorial(g).max_abs_diff(b) < 1e-10

    def test_alpha(self):
        assert star_alpha([0.5, 0.5]) == 0.0
        assert star_alpha([0.0]) == 2.0
        with pytest.raises(ValueError):
            star_of_triangles_closed_form([])
