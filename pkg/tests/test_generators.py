"""Generators: structural claims of every construction, plus extractions."""

from __future__ import annotations

import pytest

from localgraphs import (BLACK, WHITE, ColouringClass, classify_colouring,
                         local_views_equivalent)
from localgraphs.errors import (DegenerateParamsError, DeltaTooSmallError,
                                EvenDeltaError, NotIndependentError,
                                NotInCycleError, NotProperlyColouredError,
                                OddCycleLengthError, TooSmallError)
from localgraphs.generators import (cycle_power, matching_to_independent_set,
                                    merge_layer_independent_sets,
                                    numbered_cycle, random_bipartite,
                                    random_weak, random_weak_colouring,
                                    shuffle_ports, strong_blowup,
                                    symmetric_complete,
                                    trivial_white_independent_set,
                                    weak_layered,
                                    weak_layered_perfect_matching)
from localgraphs.oracles import (Solution, SolutionKind,
                                 brute_max_independent_set,
                                 brute_min_dominating_set, verify_solution)

from conftest import ascending_ports


class TestNumberedCycle:
    def test_triangle(self):
        c = numbered_cycle(3)
        assert c.graph.n == 3 and len(c.graph.orientation) == 3

    def test_in_and_out_degree_one(self):
        c = numbered_cycle(4)
        tails = [t for t, _ in c.graph.orientation.values()]
        heads = [h for _, h in c.graph.orientation.values()]
        assert sorted(tails) == sorted(heads) == list(range(4))

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            numbered_cycle(2)

    def test_port_convention(self):
        c = numbered_cycle(5)
        for v in range(5):
            assert c.graph.port_neighbour(v, 1) == c.successor(v)
            assert c.graph.port_neighbour(v, 2) == c.predecessor(v)


class TestCyclePower:
    def test_regularity_and_edge_count(self):
        g = cycle_power(numbered_cycle(8), 2)
        assert g.n == 8 and g.edge_count == 16
        assert all(g.degree(v) == 4 for v in g.nodes)

    def test_complete_when_distance_covers(self):
        g = cycle_power(numbered_cycle(5), 2)
        assert g.edge_count == 10   # K5

    def test_perfect_code_size(self):
        g = cycle_power(numbered_cycle(9), 1)
        assert len(brute_min_dominating_set(g)) == 3

    def test_degenerate(self):
        with pytest.raises(DegenerateParamsError):
            cycle_power(numbered_cycle(4), 2)


class TestStrongBlowup:
    def test_structure(self):
        g = strong_blowup(numbered_cycle(8), 3)
        assert g.n == 16
        assert all(g.degree(v) == 3 for v in g.nodes)
        assert classify_colouring(g) is ColouringClass.PROPER

    def test_optimum_when_divisible(self):
        g = strong_blowup(numbered_cycle(8), 3)
        assert len(brute_min_dominating_set(g)) == 4   # 2n/(delta+1)

    def test_delta_one_is_perfect_matching_graph(self):
        g = strong_blowup(numbered_cycle(4), 1)
        assert g.n == 8 and g.edge_count == 4
        assert all(g.degree(v) == 1 for v in g.nodes)

    def test_degenerate(self):
        with pytest.raises(DegenerateParamsError):
            strong_blowup(numbered_cycle(3), 3)


class TestWeakLayered:
    def test_structure(self):
        g = weak_layered(numbered_cycle(4), 3)
        assert g.n == 16
        assert classify_colouring(g) is ColouringClass.WEAK
        degrees = sorted(g.degree(v) for v in g.nodes)
        assert degrees == [3] * 16     # blacks delta=3, whites 3

    def test_degree_split_delta5(self):
        g = weak_layered(numbered_cycle(4), 5)
        blacks = [v for v in g.nodes if g.colour(v) == BLACK]
        whites = [v for v in g.nodes if g.colour(v) == WHITE]
        assert all(g.degree(v) == 5 for v in blacks)
        assert all(g.degree(v) == 3 for v in whites)

    def test_explicit_perfect_matching(self):
        c = numbered_cycle(4)
        g = weak_layered(c, 3)
        pm = weak_layered_perfect_matching(c, 3)
        assert len(pm) == 8            # (delta+1) * n / 2
        assert verify_solution(g, Solution(SolutionKind.MATCHING, pm)).ok
        assert len({x for e in pm for x in e}) == g.n

    def test_odd_cycle_rejected(self):
        with pytest.raises(OddCycleLengthError):
            weak_layered(numbered_cycle(5), 3)

    def test_small_delta_rejected(self):
        with pytest.raises(DeltaTooSmallError):
            weak_layered(numbered_cycle(4), 2)


class TestSymmetricComplete:
    def test_k4_views_indistinguishable(self):
        g = symmetric_complete(3)
        assert g.n == 4 and g.edge_count == 6
        for u in g.nodes:
            for v in g.nodes:
                assert local_views_equivalent(g, u, g, v, 3)

    def test_symmetric_ports(self):
        g = symmetric_complete(5)
        for u, v in g.edges:
            assert g.port_of(u, v) == g.port_of(v, u)

    def test_single_edge_case(self):
        g = symmetric_complete(1)
        assert g.n == 2 and g.port_of(0, 1) == g.port_of(1, 0) == 1

    def test_even_delta_rejected(self):
        with pytest.raises(EvenDeltaError):
            symmetric_complete(4)


class TestMatchingToIndependentSet:
    def test_c6(self):
        c = numbered_cycle(6)
        out = matching_to_independent_set(c, {(1, 2), (3, 4)})
        assert out == {1, 3}
        assert verify_solution(c.graph,
                               Solution(SolutionKind.INDEPENDENT_SET, out)).ok

    def test_empty(self):
        assert matching_to_independent_set(numbered_cycle(5), frozenset()) == frozenset()

    def test_c4_reaches_optimum(self):
        c = numbered_cycle(4)
        out = matching_to_independent_set(c, {(0, 1), (2, 3)})
        assert len(out) == 2 == len(brute_max_independent_set(c.graph))

    def test_wrap_around_edge_tail(self):
        c = numbered_cycle(5)
        assert matching_to_independent_set(c, {(0, 4)}) == {4}

    def test_non_cycle_edge_rejected(self):
        c = numbered_cycle(6)
        with pytest.raises(NotInCycleError):
            matching_to_independent_set(c, {(0, 3)})


class TestMergeLayers:
    def test_hand_executed(self):
        c = numbered_cycle(6)
        merged = merge_layer_independent_sets(c, [{1, 4}, {2, 5}])
        assert merged == {1, 4}
        assert 2 * len(merged) * 3 >= 2 * 4   # 2 >= 4/3

    def test_all_empty(self):
        assert merge_layer_independent_sets(numbered_cycle(6), [set(), set()]) == frozenset()

    def test_worst_case_loses_factor(self):
        # one survivor can wipe two nodes from each later layer
        c = numbered_cycle(12)
        layers = [{0}, {11, 1}, {11, 1}, {11, 1}]
        merged = merge_layer_independent_sets(c, layers)
        assert merged == {0}
        total = sum(len(s) for s in layers)
        assert total == 2 * len(layers) - 1   # exactly the 2*delta - 1 bound

    def test_not_independent_rejected(self):
        with pytest.raises(NotIndependentError):
            merge_layer_independent_sets(numbered_cycle(6), [{0, 1}])

    def test_bound_holds_randomly(self):
        import random
        rng = random.Random(5)
        for trial in range(200):
            n = rng.randrange(4, 30)
            c = numbered_cycle(n)
            layers = []
            for _ in range(rng.randrange(1, 5)):
                layer = set()
                for v in range(n):
                    if rng.random() < 0.4 and (v + 1) % n not in layer \
                            and (v - 1) % n not in layer:
                        layer.add(v)
                layers.append(layer)
            merged = merge_layer_independent_sets(c, layers)
            assert verify_solution(c.graph, Solution(
                SolutionKind.INDEPENDENT_SET, merged)).ok
            total = sum(len(s) for s in layers)
            assert len(merged) * (2 * len(layers) - 1) >= total


class TestTrivialWhiteSet:
    def test_single_edge(self, single_edge):
        assert trivial_white_independent_set(single_edge) == {1}

    def test_star_white_leaves(self):
        g = ascending_ports(4, [(0, 1), (0, 2), (0, 3)],
                            colours=[BLACK, WHITE, WHITE, WHITE])
        out = trivial_white_independent_set(g)
        assert out == {1, 2, 3}
        assert len(out) == len(brute_max_independent_set(g))

    def test_c6_optimal(self):
        g = ascending_ports(6, [(i, (i + 1) % 6) for i in range(6)],
                            colours=[BLACK, WHITE] * 3)
        out = trivial_white_independent_set(g)
        assert len(out) == 3 == len(brute_max_independent_set(g))

    def test_requires_proper(self):
        g = ascending_ports(3, [(0, 1), (1, 2), (0, 2)],
                            colours=[BLACK, WHITE, WHITE])
        with pytest.raises(NotProperlyColouredError):
            trivial_white_independent_set(g)


class TestRatioStress:
    def test_star_roots_on_blowup_family(self):
        # the adversarial family never pushes the ratio past (delta+1)/2
        from fractions import Fraction
        from localgraphs.starforest import star_dominating_set, star_forest
        for n, delta in ((6, 2), (8, 3), (12, 3), (16, 3), (12, 4)):
            g = strong_blowup(numbered_cycle(n), delta)
            roots = star_dominating_set(star_forest(g))
            optimum = brute_min_dominating_set(g, limit=32)
            assert verify_solution(g, Solution(
                SolutionKind.DOMINATING_SET, roots)).ok
            assert Fraction(len(roots), len(optimum)) <= Fraction(delta + 1, 2)
            if n % (delta + 1) == 0:
                assert len(optimum) == 2 * n // (delta + 1)


class TestRandomFamilies:
    def test_bipartite_properties(self):
        for seed in range(30):
            g = random_bipartite(12, 4, seed)
            assert g.max_degree <= 4
            assert all(g.degree(v) >= 1 for v in g.nodes)
            assert classify_colouring(g) is ColouringClass.PROPER

    def test_weak_properties(self):
        for seed in range(30):
            g = random_weak(12, 4, seed)
            assert g.max_degree <= 4
            assert classify_colouring(g) >= ColouringClass.WEAK
            assert g.has_orientation

    def test_seed_determinism(self):
        assert random_weak(10, 3, 4) == random_weak(10, 3, 4)
        assert random_bipartite(10, 3, 4) == random_bipartite(10, 3, 4)
        assert random_weak(10, 3, 4) != random_weak(10, 3, 5)

    def test_shuffle_ports_keeps_edges(self, c4_coloured):
        g = shuffle_ports(c4_coloured, 9)
        assert g.edges == c4_coloured.edges
        assert g.colours == c4_coloured.colours

    def test_random_weak_colouring_valid(self):
        g = random_weak(14, 4, 2, oriented=False)
        for seed in range(10):
            colours = random_weak_colouring(g, seed)
            assert classify_colouring(g, colours) >= ColouringClass.WEAK
