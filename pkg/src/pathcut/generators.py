"""Seeded synthetic graph families and edge-weight schemes.

Families: Erdos-Renyi (``er``), preferential attachment (``ba``),
stochastic Kronecker (``kronecker``), grid (``lattice``), and clique
(``complete``). Generation is deterministic per seed; lattice and
complete are deterministic outright.

Weight schemes produce positive integer weights and set each edge's
removal cost equal to its weight.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Optional

import numpy as np

from .errors import InputError
from .graphs import Graph

FAMILIES = ("er", "ba", "kronecker", "lattice", "complete")
WEIGHT_KINDS = ("poisson", "uniform", "equal")

#: Default Kronecker initiator; rescaled per draw so the density parameter
#: controls the expected edge count.
DEFAULT_INITIATOR = ((0.9, 0.5), (0.5, 0.1))


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one synthetic graph.

    Family-specific fields: ``n``/``p`` (er), ``n``/``m`` (ba, attachment
    degree), ``iterations``/``density``/``initiator`` (kronecker),
    ``rows``/``cols`` (lattice), ``n`` (complete).
    """

    family: str
    n: Optional[int] = None
    p: Optional[float] = None
    m: Optional[int] = None
    iterations: Optional[int] = None
    density: Optional[float] = None
    initiator: tuple = DEFAULT_INITIATOR
    rows: Optional[int] = None
    cols: Optional[int] = None
    seed: int = 0

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        if self.family != "kronecker":
            d.pop("initiator", None)
        else:
            d["initiator"] = [list(r) for r in self.initiator]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        d = dict(d)
        if "initiator" in d:
            d["initiator"] = tuple(tuple(r) for r in d["initiator"])
        try:
            return cls(**d)
        except TypeError as exc:
            raise InputError(f"bad generator spec: {exc}") from None

    def reseeded(self, seed: int) -> "GeneratorSpec":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class WeightScheme:
    """Edge-weight initialization: 1 + Poisson(rate), integer-uniform on
    [1, upper], or a constant."""

    kind: str
    rate: float = 20.0
    upper: int = 41
    value: int = 1
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "WeightScheme":
        try:
            return cls(**d)
        except TypeError as exc:
            raise InputError(f"bad weight scheme: {exc}") from None

    def reseeded(self, seed: int) -> "WeightScheme":
        return replace(self, seed=seed)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def generate(spec: GeneratorSpec) -> Graph:
    """Graph of the requested family with unit weights and costs."""
    if spec.family == "er":
        return _er(spec)
    if spec.family == "ba":
        return _ba(spec)
    if spec.family == "kronecker":
        return _kronecker(spec)
    if spec.family == "lattice":
        return _lattice(spec)
    if spec.family == "complete":
        return _complete(spec)
    raise InputError(f"unknown family {spec.family!r}; choose from {FAMILIES}")


def _er(spec: GeneratorSpec) -> Graph:
    _require(spec.n is not None and spec.n >= 1, "er needs n >= 1")
    _require(spec.p is not None and 0.0 <= spec.p <= 1.0, "er needs 0 <= p <= 1")
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.shape[0]) < spec.p
    edges = [(int(u), int(v), 1, 1) for u, v in zip(iu[mask], ju[mask])]
    return Graph(n, edges)


def _ba(spec: GeneratorSpec) -> Graph:
    _require(spec.n is not None and spec.m is not None, "ba needs n and m")
    _require(1 <= spec.m < spec.n, "ba needs 1 <= m < n")
    rng = np.random.default_rng(spec.seed)
    n, m = spec.n, spec.m
    edges: list[tuple] = [(u, v, 1, 1) for u in range(m) for v in range(u + 1, m)]
    # One endpoint entry per degree; sampling an index is degree-proportional.
    repeated: list[int] = [u for u in range(m) for _ in range(m - 1)]
    for new in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            if repeated:
                targets.add(repeated[int(rng.integers(len(repeated)))])
            else:
                targets.add(int(rng.integers(new)))
        for tgt in sorted(targets):
            edges.append((tgt, new, 1, 1))
            repeated.extend((tgt, new))
    return Graph(n, edges)


def _kronecker(spec: GeneratorSpec) -> Graph:
    _require(spec.iterations is not None and spec.iterations >= 1,
             "kronecker needs iterations >= 1")
    _require(spec.density is not None and spec.density > 0, "kronecker needs density > 0")
    init = np.asarray(spec.initiator, dtype=float)
    _require(init.shape == (2, 2) and (init >= 0).all(), "initiator must be a nonnegative 2x2 matrix")
    rng = np.random.default_rng(spec.seed)
    k = spec.iterations
    n = 2 ** k
    target = int(round(spec.density * n * (n - 1) / 2))
    probs = (init / init.sum()).ravel()  # quadrant probabilities, MSB first
    quadrants = rng.choice(4, size=(target, k), p=probs)
    shifts = np.arange(k - 1, -1, -1)
    u = ((quadrants >> 1) << shifts).sum(axis=1)
    v = ((quadrants & 1) << shifts).sum(axis=1)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    keep = lo != hi  # drop self-loops
    pairs = sorted({(int(a), int(b)) for a, b in zip(lo[keep], hi[keep])})
    # Drop isolated nodes and compact ids.
    used = sorted({x for pair in pairs for x in pair})
    relabel = {x: i for i, x in enumerate(used)}
    edges = [(relabel[a], relabel[b], 1, 1) for a, b in pairs]
    return Graph(len(used), edges)


def _lattice(spec: GeneratorSpec) -> Graph:
    _require(spec.rows is not None and spec.cols is not None, "lattice needs rows and cols")
    _require(spec.rows >= 1 and spec.cols >= 1, "lattice needs rows, cols >= 1")
    r, c = spec.rows, spec.cols
    edges = []
    for i in range(r):
        for j in range(c):
            node = i * c + j
            if j + 1 < c:
                edges.append((node, node + 1, 1, 1))
            if i + 1 < r:
                edges.append((node, node + c, 1, 1))
    return Graph(r * c, edges)


def _complete(spec: GeneratorSpec) -> Graph:
    _require(spec.n is not None and spec.n >= 1, "complete needs n >= 1")
    n = spec.n
    return Graph(n, ((u, v, 1, 1) for u in range(n) for v in range(u + 1, n)))


def assign_weights(g: Graph, scheme: WeightScheme) -> Graph:
    """Fresh graph with scheme-drawn integer weights; costs equal weights."""
    rng = np.random.default_rng(scheme.seed)
    keys = g.edges()
    if scheme.kind == "poisson":
        _require(scheme.rate > 0, "poisson scheme needs rate > 0")
        draws = 1 + rng.poisson(scheme.rate, size=len(keys))
    elif scheme.kind == "uniform":
        _require(scheme.upper >= 1, "uniform scheme needs upper >= 1")
        draws = rng.integers(1, scheme.upper + 1, size=len(keys))
    elif scheme.kind == "equal":
        _require(int(scheme.value) == scheme.value and scheme.value >= 1,
                 "equal scheme needs a positive integer value")
        draws = np.full(len(keys), int(scheme.value))
    else:
        raise InputError(f"unknown weight scheme {scheme.kind!r}; choose from {WEIGHT_KINDS}")
    records = [(u, v, int(w), int(w)) for (u, v), w in zip(keys, draws)]
    return Graph(g.node_count, records)
