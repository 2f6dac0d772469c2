"""Verification sweeps and canonical small instances.

Used by the ``reduce-check`` CLI verb, test oracles, and the runnable
scripts. Everything here is desk scale by construction.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Optional

import numpy as np

from .errors import InputError
from .graphs import Graph, Path, bfs_hops
from .reduction import TerminalCutInstance, brute_force_3tc, brute_force_force_path_cut, solve_3tc_via_fpc


def connected_edge_sets(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All connected labeled graphs on exactly ``n`` nodes, as edge tuples."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1, 2 ** len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        if _spans(n, edges):
            yield edges


def _spans(n: int, edges) -> bool:
    if n == 1:
        return True
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def clique_instance(n: int) -> tuple[Graph, Path]:
    """Clique on ``n`` nodes, unit weights and costs except the protected
    direct edge (0, 1), which has weight (and cost) ``n``."""
    if n < 3:
        raise InputError("clique instance needs n >= 3")
    records = []
    for u in range(n):
        for v in range(u + 1, n):
            w = n if (u, v) == (0, 1) else 1
            records.append((u, v, w, w))
    return Graph(n, records), Path((0, 1))


def _weight_assignments(edges, exhaustive: bool, rng, samples: int = 2):
    m = len(edges)
    if exhaustive:
        for mask in range(2 ** m):
            yield tuple(1 + (mask >> i & 1) for i in range(m))
    else:
        for _ in range(samples):
            yield tuple(int(w) for w in rng.integers(1, 3, size=m))


def _budget_grid(w_all: int) -> list[int]:
    return sorted({0, 1, 2, 3, 4, 5, w_all})


def reduction_equivalence_sweep(
    max_nodes: int = 5,
    random_instances: int = 200,
    random_nodes: int = 6,
    eps_values: tuple = (0.5, 1.0, 10.0),
    seed: int = 0,
    exhaustive_weight_nodes: int = 4,
    weight_samples: int = 2,
) -> tuple[int, int]:
    """Check the transformation against direct brute force.

    Covers every connected labeled graph on 3..``max_nodes`` nodes with
    weights in {1, 2} (exhaustive assignments up to
    ``exhaustive_weight_nodes`` nodes, seeded samples beyond), a budget
    grid, and every eps; plus ``random_instances`` random graphs on
    ``random_nodes`` nodes. Terminals are fixed to (0, 1, 2) for the
    labeled enumeration (all relabelings appear as other graphs) and drawn
    randomly for the random block.

    Returns (checks run, disagreements). The brute-force path-cut solve is
    memoized per transformed graph; the transformation pipeline itself
    runs for every (instance, budget, eps) triple.
    """
    rng = np.random.default_rng(seed)
    checked = 0
    disagreements = 0

    def check(graph: Graph, terminals, budgets) -> None:
        nonlocal checked, disagreements
        cache: dict = {}

        def cached_solver(fpc_graph, p_star, budget):
            key = tuple(fpc_graph.edge_records())
            if key not in cache:
                cache[key] = brute_force_force_path_cut(fpc_graph, p_star).total_cost
            return cache[key] <= budget + 1e-9

        for b in budgets:
            inst = TerminalCutInstance(graph=graph, budget=b, terminals=terminals)
            direct = brute_force_3tc(inst)
            for eps in eps_values:
                via = solve_3tc_via_fpc(inst, eps=eps, fpc_solver=cached_solver)
                checked += 1
                if via != direct:
                    disagreements += 1

    for n in range(3, max_nodes + 1):
        exhaustive = n <= exhaustive_weight_nodes
        for edges in connected_edge_sets(n):
            for weights in _weight_assignments(edges, exhaustive, rng, weight_samples):
                g = Graph(n, [(u, v, w, w) for (u, v), w in zip(edges, weights)])
                check(g, (0, 1, 2), _budget_grid(g.total_weight()))

    produced = 0
    while produced < random_instances:
        n = random_nodes
        pairs = list(combinations(range(n), 2))
        mask = rng.random(len(pairs)) < rng.uniform(0.35, 0.8)
        edges = tuple(p for p, keep in zip(pairs, mask) if keep)
        if not _spans(n, edges):
            continue
        weights = rng.integers(1, 3, size=len(edges))
        g = Graph(n, [(u, v, int(w), int(w)) for (u, v), w in zip(edges, weights)])
        terminals = tuple(int(x) for x in rng.choice(n, size=3, replace=False))
        check(g, terminals, _budget_grid(g.total_weight()))
        produced += 1

    return checked, disagreements
