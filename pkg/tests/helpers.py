"""Shared builders and independent oracles for the test suite."""

from itertools import combinations

from hypothesis import strategies as st

from pathcut import Graph, Path
from pathcut.reduction import enumerate_simple_paths


def random_graph(rng, n, p, max_weight=10, costs_equal_weights=True):
    """Seeded ER-style graph with integer weights in [1, max_weight]."""
    records = []
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            w = int(rng.integers(1, max_weight + 1))
            c = w if costs_equal_weights else int(rng.integers(1, max_weight + 1))
            records.append((u, v, w, c))
    return Graph(n, records)


def reachable_pair(rng, g):
    """Some (s, t) with an s-t path, or None."""
    comp = {}
    for s in range(g.node_count):
        stack, seen = [s], {s}
        while stack:
            for v, _ in g.neighbors(stack.pop()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) > 1:
            others = sorted(seen - {s})
            return s, others[int(rng.integers(len(others)))]
    return None


def brute_sorted_paths(g, s, t):
    """All simple s-t paths sorted by (length, sequence): the enumeration
    oracle the ranking iterator is checked against."""
    return enumerate_simple_paths(g, s, t)


def brute_shortest(g, s, t):
    paths = enumerate_simple_paths(g, s, t)
    return paths[0] if paths else None


@st.composite
def small_graph_and_pair(draw, max_nodes=8, max_weight=6):
    """Hypothesis strategy: (graph, s, t) with at least one s-t edge set."""
    n = draw(st.integers(2, max_nodes))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, k in zip(pairs, keep) if k]
    ws = draw(st.lists(st.integers(1, max_weight), min_size=len(edges), max_size=len(edges)))
    g = Graph(n, [(u, v, w) for (u, v), w in zip(edges, ws)])
    s = draw(st.integers(0, n - 1))
    t = draw(st.integers(0, n - 1).filter(lambda x: x != s))
    return g, s, t


def path_from_nodes(nodes):
    return Path(tuple(nodes))
