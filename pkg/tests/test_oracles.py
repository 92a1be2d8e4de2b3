"""Oracles: exact values on fixtures, agreement with plain enumeration."""

from __future__ import annotations

import itertools
import random

import pytest

from localgraphs.errors import InvalidMatchingError, TooLargeError
from localgraphs.generators import random_bipartite, random_weak
from localgraphs.oracles import (Solution, SolutionKind,
                                 brute_max_independent_set,
                                 brute_max_matching,
                                 brute_min_dominating_set,
                                 shortest_augmenting_path_length,
                                 verify_solution)

import _corpus
from conftest import ascending_ports


def star_k13():
    return ascending_ports(4, [(0, 1), (0, 2), (0, 3)])


def cycle(n):
    return ascending_ports(n, [(i, (i + 1) % n) for i in range(n)])


# -- reference enumerations (independent of the oracles' search strategy) -----

def enum_min_dominating_set_size(g):
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            chosen = set(subset)
            if all(v in chosen or any(u in chosen for u in g.neighbours(v))
                   for v in g.nodes):
                return size
    raise AssertionError


def enum_max_matching_size(g):
    edges = sorted(g.edges)

    def rec(idx, used):
        if idx == len(edges):
            return 0
        best = rec(idx + 1, used)
        u, v = edges[idx]
        if u not in used and v not in used:
            best = max(best, 1 + rec(idx + 1, used | {u, v}))
        return best

    return rec(0, frozenset())


def enum_max_independent_set_size(g):
    best = 0
    for size in range(g.n, 0, -1):
        if size <= best:
            break
        for subset in itertools.combinations(range(g.n), size):
            chosen = set(subset)
            if all(not (u in chosen and v in chosen) for u, v in g.edges):
                return size
    return best


def enum_min_vertex_cover_size(g):
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in g.edges):
                return size
    raise AssertionError


class TestFixtures:
    def test_dominating_set(self, single_edge, c4_coloured):
        assert len(brute_min_dominating_set(single_edge)) == 1
        assert len(brute_min_dominating_set(c4_coloured)) == 2
        assert brute_min_dominating_set(star_k13()) == {0}

    def test_matching(self, single_edge, p4_coloured):
        assert len(brute_max_matching(single_edge)) == 1
        assert len(brute_max_matching(p4_coloured)) == 2
        assert len(brute_max_matching(cycle(6))) == 3

    def test_independent_set(self, single_edge, k4_oriented):
        assert len(brute_max_independent_set(single_edge)) == 1
        assert len(brute_max_independent_set(cycle(6))) == 3
        assert len(brute_max_independent_set(k4_oriented)) == 1

    def test_too_large(self):
        g = random_weak(30, 3, 1, oriented=False)
        with pytest.raises(TooLargeError):
            brute_min_dominating_set(g, limit=24)
        # bipartite matching has no such cap
        big = random_bipartite(40, 3, 1)
        assert brute_max_matching(big)


class TestShortestAugmentingPath:
    def test_single_unmatched_edge(self, single_edge):
        assert shortest_augmenting_path_length(single_edge, frozenset()) == 1

    def test_p4_middle_edge(self, p4_coloured):
        assert shortest_augmenting_path_length(p4_coloured, {(1, 2)}) == 3

    def test_p4_maximum(self, p4_coloured):
        assert shortest_augmenting_path_length(p4_coloured, {(0, 1), (2, 3)}) is None

    def test_odd_cycle_fixture(self):
        c5 = cycle(5)
        assert shortest_augmenting_path_length(c5, {(0, 1), (2, 3)}) is None
        assert shortest_augmenting_path_length(c5, {(1, 2)}) == 1

    def test_invalid_matching(self, p4_coloured):
        with pytest.raises(InvalidMatchingError):
            shortest_augmenting_path_length(p4_coloured, {(0, 1), (1, 2)})
        with pytest.raises(InvalidMatchingError):
            shortest_augmenting_path_length(p4_coloured, {(0, 2)})

    def test_none_iff_maximum(self):
        rng = random.Random(7)
        for trial in range(60):
            n = rng.randrange(4, 11)
            g = random_weak(n, 3, trial, oriented=False)
            matching = _greedy_random_matching(g, rng)
            is_max = len(matching) == len(brute_max_matching(g))
            spl = shortest_augmenting_path_length(g, matching)
            assert (spl is None) == is_max


def _greedy_random_matching(g, rng):
    edges = sorted(g.edges)
    rng.shuffle(edges)
    used, out = set(), set()
    for u, v in edges:
        if u not in used and v not in used and rng.random() < 0.7:
            used.update((u, v))
            out.add((u, v))
    return frozenset(out)


@pytest.fixture(scope="module")
def small_corpus():
    # the full corpus of connected graphs up to 8 nodes
    return [ascending_ports(n, edges)
            for n, edges in _corpus.connected_graphs(max_n=8)]


class TestAgreementWithEnumeration:
    def test_dominating_set_agrees(self, small_corpus):
        for g in small_corpus:
            assert len(brute_min_dominating_set(g)) == enum_min_dominating_set_size(g)

    def test_matching_agrees(self, small_corpus):
        for g in small_corpus:
            m = brute_max_matching(g)
            assert verify_solution(g, Solution(SolutionKind.MATCHING, m)).ok
            assert len(m) == enum_max_matching_size(g)

    def test_independent_set_agrees(self, small_corpus):
        for g in small_corpus:
            s = brute_max_independent_set(g)
            assert verify_solution(g, Solution(SolutionKind.INDEPENDENT_SET, s)).ok
            assert len(s) == enum_max_independent_set_size(g)

    def test_koenig_on_bipartite(self):
        for n, edges in _corpus.bipartite_connected_graphs(max_n=7):
            g = ascending_ports(n, edges)
            assert len(brute_max_matching(g)) == enum_min_vertex_cover_size(g)


class TestVerify:
    def test_undominated_reported(self, c4_coloured):
        report = verify_solution(
            c4_coloured, Solution(SolutionKind.DOMINATING_SET, frozenset({0})))
        assert not report.ok
        assert any("not dominated" in v for v in report.violations)

    def test_empty_matching_ok(self, c4_coloured):
        assert verify_solution(
            c4_coloured, Solution(SolutionKind.MATCHING, frozenset())).ok

    def test_adjacent_pair_not_independent(self, single_edge):
        report = verify_solution(
            single_edge, Solution(SolutionKind.INDEPENDENT_SET, frozenset({0, 1})))
        assert not report.ok

    def test_overlapping_matching_reported(self, p4_coloured):
        report = verify_solution(
            p4_coloured, Solution(SolutionKind.MATCHING, frozenset({(0, 1), (1, 2)})))
        assert not report.ok

    def test_solutions_returned_by_oracles_verify(self, c4_coloured):
        ds = brute_min_dominating_set(c4_coloured)
        assert verify_solution(
            c4_coloured, Solution(SolutionKind.DOMINATING_SET, ds)).ok
