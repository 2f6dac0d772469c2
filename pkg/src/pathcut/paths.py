"""Ranking simple s-t paths by length, lazily.

:class:`PathIterator` yields simple paths in nondecreasing
``(length, node sequence)`` order using deviation-based ranking: each
yielded path spawns candidates that share a root prefix and deviate at a
spur node, with the spur search banning the root's interior nodes and the
deviation edges already taken by yielded paths with the same prefix.

Candidates are popped from a heap keyed by ``(length, nodes)``, so ties
resolve to the lexicographically smallest sequence. Generation is lazy;
the constraint-generation oracle (:func:`next_shortest_excluding`)
materializes at most two paths per call.
"""

from __future__ import annotations

import heapq
from typing import Iterator, Optional

from .errors import InputError
from .graphs import Graph, Path, edge_key, path_length, shortest_path


class PathIterator:
    """Single-consumer iterator over simple s-t paths of an immutable graph.

    ``allowed_nodes`` restricts enumeration to the induced subgraph on that
    node subset (used for hop-bounded neighborhoods on grid-like graphs).
    """

    def __init__(self, g: Graph, s: int, t: int, allowed_nodes=None):
        s = g.check_node(s)
        t = g.check_node(t)
        if s == t:
            raise InputError("path enumeration needs distinct endpoints")
        self._g = g
        self._s = s
        self._t = t
        self._allowed = frozenset(allowed_nodes) if allowed_nodes is not None else None
        self._heap: list[tuple] = []
        self._seen: set[tuple] = set()
        self._yielded: list[tuple] = []  # (length, nodes) in pop order
        self._pending: tuple | None = None  # yielded path awaiting deviation spawn
        first = shortest_path(g, s, t, allowed_nodes=self._allowed)
        if first is not None:
            self._push(path_length(g, first), first.nodes)

    def _push(self, length, nodes: tuple) -> None:
        if nodes not in self._seen:
            self._seen.add(nodes)
            heapq.heappush(self._heap, (length, nodes))

    def __iter__(self) -> Iterator[Path]:
        return self

    def __next__(self) -> Path:
        # Deviations of the last yielded path are spawned only when the
        # next path is actually requested, so a consumer that stops after
        # one path (the oracle, usually) pays for one search only.
        if self._pending is not None:
            self._spawn_deviations(self._pending)
            self._pending = None
        if not self._heap:
            raise StopIteration
        length, nodes = heapq.heappop(self._heap)
        self._yielded.append((length, nodes))
        self._pending = nodes
        return Path(nodes)

    def _spawn_deviations(self, parent: tuple) -> None:
        g = self._g
        prefix_len = [0]
        for a, b in zip(parent, parent[1:]):
            prefix_len.append(prefix_len[-1] + g.weight(a, b))
        for i in range(len(parent) - 1):
            root = parent[: i + 1]
            spur = parent[i]
            banned_edges = set()
            for _, nodes in self._yielded:
                if len(nodes) > i + 1 and nodes[: i + 1] == root:
                    banned_edges.add(edge_key(nodes[i], nodes[i + 1]))
            spur_path = shortest_path(
                g,
                spur,
                self._t,
                banned_nodes=frozenset(root[:-1]),
                banned_edges=frozenset(banned_edges),
                allowed_nodes=self._allowed,
            )
            if spur_path is None:
                continue
            candidate = root[:-1] + spur_path.nodes
            self._push(prefix_len[i] + path_length(g, spur_path), candidate)


def k_shortest_paths(g: Graph, s: int, t: int, k: int, allowed_nodes=None) -> list[Path]:
    """First ``min(k, total)`` simple s-t paths in ranking order.

    Returns an empty list when t is unreachable; fewer than ``k`` paths
    exactly when fewer exist.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    out: list[Path] = []
    for p in PathIterator(g, s, t, allowed_nodes=allowed_nodes):
        out.append(p)
        if len(out) == k:
            break
    return out


def next_shortest_excluding(
    g: Graph, s: int, t: int, p_star: Path, allowed_nodes=None
) -> Optional[Path]:
    """Minimum-length simple s-t path whose node sequence differs from
    ``p_star``, or None if no such path exists.

    This is the constraint-generation oracle: the returned path is a
    violated constraint iff it is not strictly longer than ``p_star``.
    ``p_star`` only needs to be a node-sequence descriptor; its edges are
    not required to exist in ``g``.
    """
    skip = p_star.nodes
    for p in PathIterator(g, s, t, allowed_nodes=allowed_nodes):
        if p.nodes != skip:
            return p
    return None
