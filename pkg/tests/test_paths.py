import numpy as np
import pytest
from hypothesis import given, settings

from helpers import brute_sorted_paths, random_graph, small_graph_and_pair
from pathcut import Graph, InputError, Path, path_length, shortest_path
from pathcut.paths import PathIterator, k_shortest_paths, next_shortest_excluding


def test_unique_path_exhausts_early():
    g = Graph(3, [(0, 1, 1), (1, 2, 1)])
    assert [p.nodes for p in k_shortest_paths(g, 0, 2, 2)] == [(0, 1, 2)]


def test_four_clique_first_five_lengths():
    # s=0, t=1: one direct edge, two 2-hop, two 3-hop paths.
    g = Graph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
    got = k_shortest_paths(g, 0, 1, 5)
    assert [path_length(g, p) for p in got] == [1, 2, 2, 3, 3]
    assert [p.nodes for p in got] == [(0, 1), (0, 2, 1), (0, 3, 1), (0, 2, 3, 1), (0, 3, 2, 1)]


def test_k1_equals_shortest_path():
    rng = np.random.default_rng(7)
    for _ in range(20):
        g = random_graph(rng, 7, 0.5)
        sp = shortest_path(g, 0, 6)
        ranked = k_shortest_paths(g, 0, 6, 1)
        if sp is None:
            assert ranked == []
        else:
            assert ranked[0] == sp


def test_k_validation():
    g = Graph(2, [(0, 1, 1)])
    with pytest.raises(InputError):
        k_shortest_paths(g, 0, 1, 0)
    with pytest.raises(InputError):
        PathIterator(g, 1, 1)


def test_unreachable_gives_empty():
    g = Graph(4, [(0, 1, 1), (2, 3, 1)])
    assert k_shortest_paths(g, 0, 3, 4) == []


@given(small_graph_and_pair())
def test_iterator_matches_brute_force_order(case):
    g, s, t = case
    expect = brute_sorted_paths(g, s, t)
    got = [(path_length(g, p), p.nodes) for p in PathIterator(g, s, t)]
    assert got == expect


@given(small_graph_and_pair())
def test_iterator_lengths_nondecreasing_and_unique(case):
    g, s, t = case
    seen = set()
    prev = None
    for p in PathIterator(g, s, t):
        length = path_length(g, p)
        assert p.nodes not in seen
        seen.add(p.nodes)
        if prev is not None:
            assert length >= prev
        prev = length


def test_next_shortest_excluding_trivial_cases():
    # Only the target path exists.
    chain = Graph(3, [(0, 1, 1), (1, 2, 1)])
    p_star = Path((0, 1, 2))
    assert next_shortest_excluding(chain, 0, 2, p_star) is None
    # Triangle: the only alternative is the direct edge.
    tri = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    alt = next_shortest_excluding(tri, 0, 2, Path((0, 1, 2)))
    assert alt.nodes == (0, 2) and path_length(tri, alt) == 1


def test_next_shortest_excluding_matches_enumeration():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 25:
        g = random_graph(rng, 8, 0.4)
        ranked = brute_sorted_paths(g, 0, 7)
        if len(ranked) < 2:
            continue
        checked += 1
        p_star = Path(ranked[int(rng.integers(len(ranked)))][1])
        expect = next(nodes for _, nodes in ranked if nodes != p_star.nodes)
        assert next_shortest_excluding(g, 0, 7, p_star).nodes == expect


def test_oracle_accepts_target_with_missing_edges():
    # The descriptor's edges need not exist in the (residual) graph.
    g = Graph(3, [(0, 2, 5)])
    ghost = Path((0, 1, 2))
    assert next_shortest_excluding(g, 0, 2, ghost).nodes == (0, 2)


def test_node_mask_restricts_enumeration():
    # Square with a shortcut through node 4; masking 4 out removes it.
    g = Graph(5, [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 2, 1), (0, 4, 1), (4, 2, 1)])
    full = [p.nodes for p in k_shortest_paths(g, 0, 2, 10)]
    masked = [p.nodes for p in k_shortest_paths(g, 0, 2, 10, allowed_nodes={0, 1, 2, 3})]
    assert (0, 4, 2) in full
    assert masked == [(0, 1, 2), (0, 3, 2)]


def test_zero_weight_edges_keep_exact_ordering():
    # Weights may be 0; ties then cascade and the (length, sequence)
    # ordering must still match the enumeration oracle exactly.
    from itertools import combinations

    rng = np.random.default_rng(99)
    for _ in range(150):
        n = int(rng.integers(3, 8))
        records = [
            (u, v, int(rng.integers(0, 3)))
            for u, v in combinations(range(n), 2)
            if rng.random() < 0.45
        ]
        g = Graph(n, records)
        expect = brute_sorted_paths(g, 0, n - 1)
        got = [(path_length(g, p), p.nodes) for p in PathIterator(g, 0, n - 1)]
        assert got == expect


@settings(max_examples=30)
@given(small_graph_and_pair(max_nodes=7))
def test_exclusivity_predicate(case):
    # The oracle answer is strictly longer iff the chosen target is the
    # exclusive shortest path.
    g, s, t = case
    ranked = brute_sorted_paths(g, s, t)
    if not ranked:
        return
    p_star = Path(ranked[0][1])
    alt = next_shortest_excluding(g, s, t, p_star)
    others = [entry for entry in ranked if entry[1] != p_star.nodes]
    exclusive = not others or others[0][0] > ranked[0][0]
    if alt is None:
        assert not others
    else:
        assert (path_length(g, alt) > ranked[0][0]) == exclusive
