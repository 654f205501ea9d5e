import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaingraph.analysis import (
    bipartite_characterization_probe,
    bounds_report,
    complete_bipartite_check,
    complete_bipartite_parts,
    cospectrality_check,
    degree_pair_bound,
    edge_count_bounds,
    rho_comparison,
    symmetry_analysis,
    triangle_bound,
    triangle_sum,
    wolkowicz_bounds,
)
from gaingraph.core import GainGraphError, build_graph, negate
from gaingraph.families import (
    complete,
    complete_bipartite,
    cycle,
    path,
    random_balanced,
    random_connected,
    random_gnp,
    i_triangle,
    star_of_triangles,
    with_random_gains,
)
from gaingraph.linalg import adjacency_matrix


class TestBounds:
    def test_edge_count_interval(self):
        (lo, hi), (nlo, nhi) = edge_count_bounds(3, 3)
        assert (lo, hi) == pytest.approx((1.0, 2.0))
        assert (nlo, nhi) == pytest.approx((-2.0, -1.0))
        with pytest.raises(ValueError):
            edge_count_bounds(1, 0)
        with pytest.raises(ValueError):
            edge_count_bounds(3, 4)

    def test_wolkowicz_matches_edge_count_for_adjacency(self):
        g = random_gnp(7, 0.5, np.random.default_rng(0))
        ours = np.array(wolkowicz_bounds(adjacency_matrix(g)))
        assert np.allclose(ours, np.array(edge_count_bounds(g.n, g.m)), rtol=0, atol=1e-12)

    def test_triangle_bound(self):
        assert triangle_bound(path(3)) == 0.0
        # one neutral triangle on three vertices: cbrt(6 / 3)
        assert triangle_bound(complete(3)) == pytest.approx(np.cbrt(2.0))
        assert triangle_sum(i_triangle()) == pytest.approx(0.0, abs=1e-15)
        # a negative triangle gives a negative bound
        assert triangle_bound(complete(3, 1.0)) == pytest.approx(-np.cbrt(2.0))

    def test_degree_pair_bound_examples(self):
        assert degree_pair_bound(path(3)) == pytest.approx(math.sqrt(2))
        assert degree_pair_bound(build_graph(2, [(0, 1, 0.3)])) == pytest.approx(1.0)
        # K3: degrees 2, 2 and a single 2-walk of modulus 1 between any pair
        assert degree_pair_bound(complete(3)) == pytest.approx(math.sqrt(3))
        assert degree_pair_bound(i_triangle()) == pytest.approx(math.sqrt(3))

    def test_random_instances(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            g = random_gnp(int(rng.integers(2, 11)), float(rng.uniform(0.1, 1.0)), rng)
            report = bounds_report(g)
            assert report.all_satisfied, report

    def test_tightness(self):
        for n in range(2, 9):
            r1 = bounds_report(complete(n))
            assert r1.observed[0] == pytest.approx(r1.lambda1_interval[1], abs=1e-9)
            r2 = bounds_report(complete(n, 1.0))
            assert r2.observed[1] == pytest.approx(r2.lambdaN_interval[0], abs=1e-9)


class TestSymmetry:
    def test_bipartite_graphs_symmetric(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            g = with_random_gains(complete_bipartite(int(rng.integers(1, 4)), int(rng.integers(1, 5))), rng)
            rep = symmetry_analysis(g)
            assert rep.bipartite and rep.symmetric and rep.consistent

    def test_i_triangle_symmetric_but_not_bipartite(self):
        rep = symmetry_analysis(i_triangle())
        assert rep.symmetric and not rep.bipartite
        assert not rep.hypothesis_holds
        assert rep.consistent

    def test_neutral_triangle(self):
        rep = symmetry_analysis(complete(3))
        assert not rep.symmetric and rep.hypothesis_holds and rep.consistent

    def test_star_alpha_zero(self):
        rep = symmetry_analysis(star_of_triangles(2, [0.5, -0.5]))
        assert rep.symmetric and not rep.bipartite

    def test_random_consistency(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            g = random_gnp(int(rng.integers(2, 9)), 0.5, rng, mode="fourth-roots")
            assert symmetry_analysis(g).consistent


class TestCompleteBipartite:
    @pytest.mark.parametrize("p, q", [(1, 3), (2, 2), (2, 3), (3, 3)])
    def test_balanced_equality(self, p, q):
        rng = np.random.default_rng(p * 10 + q)
        rep = complete_bipartite_check(random_balanced(complete_bipartite(p, q), rng))
        assert rep.equality and rep.balanced and rep.consistent
        assert rep.lambda_1 == pytest.approx(math.sqrt(p * q), abs=1e-9)

    def test_k22_negative_edge(self):
        # one edge with gain -1 makes the 4-cycle non-neutral
        g = build_graph(4, [(0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 1.0)])
        rep = complete_bipartite_check(g)
        assert not rep.balanced and not rep.equality
        assert rep.lambda_1 == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_unbalanced_strictly_below(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            g = with_random_gains(complete_bipartite(2, 3), rng)
            rep = complete_bipartite_check(g)
            assert rep.consistent
            if not rep.balanced:
                assert rep.lambda_1 < rep.bound - 1e-9

    def test_parts(self):
        assert complete_bipartite_parts(path(4)) is None
        assert complete_bipartite_parts(complete(3)) is None
        assert complete_bipartite_parts(path(3)) == ((0, 2), (1,))
        with pytest.raises(GainGraphError):
            complete_bipartite_check(cycle(6))


class TestBalanceSpectra:
    def test_balanced_equal_rho_and_spectrum(self):
        rng = np.random.default_rng(5)
        g = random_balanced(random_connected(7, 0.4, rng), rng)
        rep = rho_comparison(g)
        assert rep.balanced and rep.rho_equal and rep.cospectral_with_underlying and rep.consistent

    def test_antibalanced_odd_cycle(self):
        # C5 with all gains -1: same radius, spectrum negated, so not cospectral
        rep = rho_comparison(cycle(5, 1.0))
        assert rep.antibalanced and not rep.balanced
        assert rep.rho_equal and not rep.cospectral_with_underlying
        assert rep.consistent

    def test_c4_negative(self):
        # C4 with one gain -1 is neither balanced nor antibalanced
        g = cycle(4).with_gains([1.0, 0.0, 0.0, 0.0])
        rep = rho_comparison(g)
        assert not rep.balanced and not rep.antibalanced
        assert rep.rho_phi < rep.rho_g and rep.consistent
        assert not cospectrality_check(g)

    def test_c5_cospectrality(self):
        assert cospectrality_check(cycle(5))
        assert not cospectrality_check(cycle(5).with_gains([0.2, 0, 0, 0, 0]))

    def test_requires_connected(self):
        with pytest.raises(GainGraphError):
            rho_comparison(build_graph(3, [(0, 1, 0.0)]))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 10), st.integers(0, 2**32 - 1), st.sampled_from(["uniform", "fourth-roots", "const1", "const-1"]))
    def test_equivalences(self, n, seed, mode):
        rng = np.random.default_rng(seed)
        g = random_connected(n, 0.3, rng)
        if mode == "const1":
            g = g.underlying()
        elif mode == "const-1":
            g = negate(g.underlying())
        else:
            g = with_random_gains(g, rng, mode)
        rep = rho_comparison(g)
        assert rep.rho_dominated
        assert rep.cospectral_with_underlying == rep.balanced
        assert rep.rho_equal == (rep.balanced or rep.antibalanced)


class TestProbe:
    def test_bipartite(self):
        rep = bipartite_characterization_probe(cycle(6), trials=10)
        assert rep.bipartite and rep.implication_held and rep.consistent

    def test_non_bipartite(self):
        rep = bipartite_characterization_probe(complete(4), trials=5)
        assert not rep.bipartite and not rep.implication_held and rep.consistent
        broken = [s.label for s in rep.samples if not s.implication_holds]
        assert "constant -1" in broken

    def test_random(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            g = random_connected(int(rng.integers(2, 8)), 0.3, rng)
            assert bipartite_characterization_probe(g, trials=5, seed=int(rng.integers(1000))).consistent

    def test_arguments(self):
        with pytest.raises(ValueError):
            bipartite_characterization_probe(path(3), trials=0)
