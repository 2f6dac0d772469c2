"""Undirected graphs with per-edge traversal weights and removal costs.

Edges are addressed everywhere by their canonical key: the endpoint pair
sorted ascending, so ``(u, v)`` and ``(v, u)`` name the same edge. Graphs
are immutable after construction; derived graphs come from
:meth:`Graph.remove_edges` / :meth:`Graph.with_edge_data`.

Node ids are dense integers ``0 .. node_count-1``. External labels are
mapped at ingestion (see :mod:`pathcut.harness`).
"""

from __future__ import annotations

import heapq
import operator
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Optional, Sequence

from .errors import InputError

EdgeKey = tuple[int, int]

#: Absolute tolerance for length comparisons with real-valued weights.
#: Integer-weight graphs compare exactly (differences are >= 1 >> tol).
LENGTH_TOL = 1e-9


def edge_key(u: int, v: int) -> EdgeKey:
    """Canonical unordered key for the edge {u, v}."""
    if u == v:
        raise InputError(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


def strictly_longer(a, b, tol: float = LENGTH_TOL) -> bool:
    """True iff length ``a`` exceeds length ``b`` beyond tolerance."""
    return a > b + tol


def _as_node(x) -> int:
    try:
        return operator.index(x)
    except TypeError:
        raise InputError(f"node id must be an integer, got {x!r}") from None


class Graph:
    """Immutable undirected graph with nonnegative weights and removal costs.

    Parameters
    ----------
    node_count:
        Number of nodes; ids are ``0..node_count-1``.
    edges:
        Iterable of ``(u, v, weight)`` or ``(u, v, weight, cost)`` records.
        When cost is omitted it defaults to the weight. Self-loops and
        duplicate unordered pairs are rejected.
    """

    __slots__ = ("node_count", "_weights", "_costs", "_adj")

    def __init__(self, node_count: int, edges: Iterable[tuple] = ()):
        node_count = _as_node(node_count)
        if node_count < 0:
            raise InputError("node_count must be nonnegative")
        self.node_count = node_count
        weights: dict[EdgeKey, float] = {}
        costs: dict[EdgeKey, float] = {}
        for rec in edges:
            if len(rec) == 3:
                u, v, w = rec
                c = w
            elif len(rec) == 4:
                u, v, w, c = rec
            else:
                raise InputError(f"edge record must be (u, v, w[, c]): {rec!r}")
            u, v = _as_node(u), _as_node(v)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise InputError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            k = edge_key(u, v)
            if k in weights:
                raise InputError(f"duplicate edge {k}")
            if w < 0 or c < 0:
                raise InputError(f"negative weight or cost on edge {k}")
            weights[k] = w
            costs[k] = c
        self._weights = weights
        self._costs = costs
        adj: list[list[tuple[int, float]]] = [[] for _ in range(node_count)]
        for (u, v), w in weights.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        for lst in adj:
            lst.sort()
        self._adj = adj

    # -- lookups ---------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self._weights)

    @property
    def weights(self):
        """Read-only mapping EdgeKey -> weight."""
        return MappingProxyType(self._weights)

    @property
    def costs(self):
        """Read-only mapping EdgeKey -> removal cost."""
        return MappingProxyType(self._costs)

    def check_node(self, u) -> int:
        u = _as_node(u)
        if not 0 <= u < self.node_count:
            raise InputError(f"node {u} out of range for {self.node_count} nodes")
        return u

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self._weights

    def weight(self, u: int, v: int):
        try:
            return self._weights[edge_key(u, v)]
        except KeyError:
            raise InputError(f"no edge between {u} and {v}") from None

    def cost(self, u: int, v: int):
        try:
            return self._costs[edge_key(u, v)]
        except KeyError:
            raise InputError(f"no edge between {u} and {v}") from None

    def edges(self) -> list[EdgeKey]:
        """All edge keys, sorted (deterministic iteration order)."""
        return sorted(self._weights)

    def edge_records(self) -> list[tuple[int, int, float, float]]:
        return [(u, v, self._weights[(u, v)], self._costs[(u, v)]) for u, v in self.edges()]

    def neighbors(self, u: int) -> Sequence[tuple[int, float]]:
        """Neighbors of ``u`` as (node, weight) pairs, sorted by node id."""
        return self._adj[self.check_node(u)]

    def degree(self, u: int) -> int:
        return len(self._adj[self.check_node(u)])

    def total_weight(self):
        return sum(self._weights.values())

    # -- derivation ------------------------------------------------------

    def remove_edges(self, removed: Iterable) -> "Graph":
        """New graph without ``removed``; weights/costs preserved elsewhere."""
        gone = set()
        for e in removed:
            k = edge_key(*e)
            if k not in self._weights:
                raise InputError(f"cannot remove unknown edge {k}")
            gone.add(k)
        return Graph(
            self.node_count,
            ((u, v, w, c) for (u, v, w, c) in self.edge_records() if (u, v) not in gone),
        )

    def with_edge_data(self, weights=None, costs=None) -> "Graph":
        """New graph with the same topology and overridden weights/costs.

        ``weights``/``costs`` map canonical edge keys to values; every edge
        of the graph must be covered by a non-None override.
        """
        records = []
        for u, v, w, c in self.edge_records():
            k = (u, v)
            if weights is not None:
                if k not in weights:
                    raise InputError(f"weight override missing edge {k}")
                w = weights[k]
            if costs is not None:
                if k not in costs:
                    raise InputError(f"cost override missing edge {k}")
                c = costs[k]
            records.append((u, v, w, c))
        return Graph(self.node_count, records)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self._weights == other._weights
            and self._costs == other._costs
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


class Path:
    """A simple (no repeated node) sequence of nodes.

    Length is not stored: it is always evaluated against a graph via
    :func:`path_length`, so the same path object can be measured on the
    original graph and on residual graphs.
    """

    __slots__ = ("nodes", "edges")

    def __init__(self, nodes: Sequence[int]):
        nodes = tuple(_as_node(n) for n in nodes)
        if not nodes:
            raise InputError("a path needs at least one node")
        if len(set(nodes)) != len(nodes):
            raise InputError(f"path repeats a node: {nodes}")
        self.nodes = nodes
        self.edges: tuple[EdgeKey, ...] = tuple(
            edge_key(a, b) for a, b in zip(nodes, nodes[1:])
        )

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def target(self) -> int:
        return self.nodes[-1]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def reverse(self) -> "Path":
        return Path(self.nodes[::-1])

    def __eq__(self, other):
        if isinstance(other, Path):
            return self.nodes == other.nodes
        return NotImplemented

    def __hash__(self):
        return hash(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __repr__(self):
        return "Path(" + "-".join(map(str, self.nodes)) + ")"


def path_length(g: Graph, p: Path):
    """Sum of edge weights along ``p``; 0 for a single-node path.

    Raises :class:`InputError` if some consecutive pair is not an edge of
    ``g``.
    """
    total = 0
    for u, v in p.edges:
        total += g.weight(u, v)
    return total


def shortest_path(
    g: Graph,
    s: int,
    t: int,
    banned_nodes: frozenset = frozenset(),
    banned_edges: frozenset = frozenset(),
    allowed_nodes: Optional[frozenset] = None,
) -> Optional[Path]:
    """Minimum-length simple s-t path, or None if t is unreachable.

    Ties are broken by the lexicographically smallest node sequence, which
    makes the result deterministic. The heap holds (length, node sequence)
    pairs so tuple comparison implements the tie-break directly.

    ``banned_nodes``/``banned_edges``/``allowed_nodes`` restrict the search
    (used by the path-ranking iterator and by neighborhood-masked runs).
    """
    s = g.check_node(s)
    t = g.check_node(t)
    if s in banned_nodes or t in banned_nodes:
        return None
    if allowed_nodes is not None and (s not in allowed_nodes or t not in allowed_nodes):
        return None
    if s == t:
        return Path((s,))
    heap: list[tuple] = [(0, (s,))]
    done: set[int] = set()
    while heap:
        dist, nodes = heapq.heappop(heap)
        u = nodes[-1]
        if u in done:
            continue
        done.add(u)
        if u == t:
            return Path(nodes)
        for v, w in g._adj[u]:
            if v in done or v in banned_nodes:
                continue
            if allowed_nodes is not None and v not in allowed_nodes:
                continue
            if banned_edges and ((u, v) if u < v else (v, u)) in banned_edges:
                continue
            heapq.heappush(heap, (dist + w, nodes + (v,)))
    return None


def bfs_hops(g: Graph, s: int, max_hops: Optional[int] = None) -> dict[int, int]:
    """Unweighted hop distance from ``s`` to every reachable node.

    ``max_hops`` truncates the search (nodes farther away are omitted).
    """
    s = g.check_node(s)
    dist = {s: 0}
    frontier = deque([s])
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if max_hops is not None and d >= max_hops:
            continue
        for v, _ in g._adj[u]:
            if v not in dist:
                dist[v] = d + 1
                frontier.append(v)
    return dist


@dataclass(frozen=True)
class CutPlan:
    """Outcome of an attack: the removed edges plus provenance.

    ``certificate`` records the final oracle check as
    ``(competitor_nodes_or_None, competitor_length_or_None, protected_length)``.
    ``lp_objective``/``lp_integral`` describe the final LP solve, when the
    method used one. ``rng_seed`` is the seed the randomized part consumed.
    """

    removed_edges: frozenset
    total_cost: float
    method_tag: str
    iterations: int = 0
    rounding_retries: int = 0
    constraints_generated: int = 0
    rng_seed: Optional[int] = None
    lp_objective: Optional[float] = None
    lp_integral: Optional[bool] = None
    protected_path: Optional[Path] = None
    certificate: Optional[tuple] = None


def make_cut_plan(g: Graph, p_star: Optional[Path], removed: Iterable, method_tag: str, **extra) -> CutPlan:
    """Build a :class:`CutPlan`, computing the total cost from ``g`` and
    enforcing that no protected edge is removed."""
    keys = frozenset(edge_key(*e) for e in removed)
    protected = frozenset(p_star.edges) if p_star is not None else frozenset()
    total = 0
    for k in sorted(keys):
        if k in protected:
            raise InputError(f"plan removes protected edge {k}")
        total += g.cost(*k)
    return CutPlan(
        removed_edges=keys,
        total_cost=total,
        method_tag=method_tag,
        protected_path=p_star,
        **extra,
    )
