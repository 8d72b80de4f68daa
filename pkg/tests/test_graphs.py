import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_alpha, brute_chromatic, brute_clique_cover, members
from pdl.graphs import (
    SolveStats,
    complement,
    greedy_clique_cover,
    is_clique,
    is_independent,
    max_clique,
    max_independent_set,
    min_clique_cover,
    min_coloring,
)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


def cycle(n):
    return [(1 << ((i + 1) % n)) | (1 << ((i - 1) % n)) for i in range(n)]


def test_cycle_values():
    c5 = cycle(5)
    assert bin(max_independent_set(c5)).count("1") == 2
    assert len(min_coloring(c5)) == 3
    assert len(min_clique_cover(c5)) == 3
    assert bin(max_clique(c5)).count("1") == 2


def test_complement_involution():
    g = cycle(6)
    assert complement(complement(g)) == g
    assert all(not (row >> i) & 1 for i, row in enumerate(complement(g)))


def test_empty_graph():
    assert max_independent_set([]) == 0
    assert min_coloring([]) == []
    assert min_clique_cover([]) == []


@given(graphs())
def test_independent_set_matches_brute(adj):
    stats = SolveStats()
    m = max_independent_set(adj, stats)
    assert is_independent(adj, m)
    assert bin(m).count("1") == brute_alpha(adj)


@given(graphs(max_n=9))
def test_clique_cover_matches_brute(adj):
    cover = min_clique_cover(adj)
    assert all(is_clique(adj, c) for c in cover)
    union = 0
    for c in cover:
        assert not union & c
        union |= c
    assert union == (1 << len(adj)) - 1
    assert len(cover) == brute_clique_cover(adj)


@given(graphs(max_n=9))
def test_coloring_matches_brute(adj):
    classes = min_coloring(adj)
    assert all(is_independent(adj, c) for c in classes)
    assert len(classes) == brute_chromatic(adj)


@given(graphs(max_n=10))
def test_greedy_cover_is_a_cover(adj):
    full = (1 << len(adj)) - 1
    cover = greedy_clique_cover(adj, full)
    assert all(is_clique(adj, c) for c in cover)
    assert sum(len(members(c)) for c in cover) == len(adj)


def test_random_medium_graphs_respect_weak_duality():
    rng = random.Random(7)
    for _ in range(5):
        n = 18
        adj = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.4:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        alpha = bin(max_independent_set(adj)).count("1")
        assert alpha <= len(min_clique_cover(adj))


@pytest.mark.parametrize("n", [4, 6, 7])
def test_cycle_clique_cover(n):
    assert len(min_clique_cover(cycle(n))) == (n + 1) // 2
