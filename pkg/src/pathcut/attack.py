"""Attack drivers: the constraint-generation outer loop and greedy baselines.

All four methods share the success predicate: after removing the plan's
edges, the protected path must be *strictly* shorter than every other
simple path between its endpoints. An equal-length competitor counts as a
violated constraint and keeps the loop running.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cover import LPCoverResult, greedy_path_cover, lp_path_cover
from .errors import ConvergenceError, InputError, IterationLimitError
from .graphs import CutPlan, Graph, Path, make_cut_plan, path_length, strictly_longer
from .lp import is_integral
from .paths import next_shortest_excluding

METHOD_PATHATTACK_LP = "pathattack-lp"
METHOD_PATHATTACK_GREEDY = "pathattack-greedy"
METHOD_GREEDY_COST = "greedy-cost"
METHOD_GREEDY_EIGENSCORE = "greedy-eigenscore"
METHODS = (
    METHOD_PATHATTACK_LP,
    METHOD_PATHATTACK_GREEDY,
    METHOD_GREEDY_COST,
    METHOD_GREEDY_EIGENSCORE,
)


@dataclass(frozen=True)
class AttackConfig:
    """Method selection and knobs for one attack run.

    ``budget`` never steers the optimization; it is only compared against
    the final cost by whoever reads the plan. ``iteration_cap`` defaults
    to ``10 * edge_count`` at runtime.
    """

    method: str = METHOD_PATHATTACK_LP
    rng_seed: int = 0
    budget: Optional[float] = None
    iteration_cap: Optional[int] = None
    recompute_eigenscores: bool = False
    rounding_retry_cap: int = 64

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; choose from {METHODS}")


def _working_graph(g: Graph, costs, weights) -> Graph:
    if costs is None and weights is None:
        return g
    return g.with_edge_data(weights=weights, costs=costs)


def _validate_target_path(g: Graph, p_star: Path) -> None:
    if p_star.num_edges == 0:
        raise InputError("target path must have at least one edge")
    for u, v in p_star.edges:
        if not g.has_edge(u, v):
            raise InputError(f"target path edge ({u}, {v}) is not in the graph")


def _certificate(g: Graph, competitor: Optional[Path], p_len):
    if competitor is None:
        return (None, None, p_len)
    return (competitor.nodes, path_length(g, competitor), p_len)


def pathattack(g: Graph, p_star: Path, cfg: AttackConfig, costs=None, weights=None) -> CutPlan:
    """Constraint-generation attack (LP or greedy subproblem per ``cfg``).

    Starting from an empty constraint set, alternate between covering the
    constraints found so far (a fresh subproblem over the original graph)
    and asking the oracle for the next competing path in the residual
    graph. Stops when the oracle's path is strictly longer than the target
    (or absent); that final oracle call is the feasibility certificate.
    """
    if cfg.method not in (METHOD_PATHATTACK_LP, METHOD_PATHATTACK_GREEDY):
        raise InputError(f"pathattack does not implement {cfg.method!r}")
    work = _working_graph(g, costs, weights)
    _validate_target_path(work, p_star)
    s, t = p_star.source, p_star.target
    p_len = path_length(work, p_star)
    cap = cfg.iteration_cap if cfg.iteration_cap is not None else 10 * work.edge_count
    rng = np.random.default_rng(cfg.rng_seed)

    constraints: list[Path] = []
    removed: frozenset = frozenset()
    residual = work
    retries = 0
    last_lp: Optional[LPCoverResult] = None
    while True:
        p = next_shortest_excluding(residual, s, t, p_star)
        if p is None or strictly_longer(path_length(residual, p), p_len):
            break
        constraints.append(p)
        if len(constraints) > cap:
            raise IterationLimitError(
                f"no feasible plan within {cap} iterations",
                partial={"constraints": len(constraints), "removed_edges": removed},
            )
        if cfg.method == METHOD_PATHATTACK_LP:
            last_lp = lp_path_cover(
                work, p_star, constraints, rng, retry_cap=cfg.rounding_retry_cap
            )
            removed = last_lp.edges
            retries += last_lp.retries
        else:
            removed = greedy_path_cover(work, p_star, constraints)
        residual = work.remove_edges(removed)

    return make_cut_plan(
        work,
        p_star,
        removed,
        cfg.method,
        iterations=len(constraints),
        constraints_generated=len(constraints),
        rounding_retries=retries,
        rng_seed=cfg.rng_seed,
        lp_objective=last_lp.solution.objective_value if last_lp else None,
        lp_integral=is_integral(last_lp.solution) if last_lp else None,
        certificate=_certificate(residual, p, p_len),
    )


def _greedy_baseline(g: Graph, p_star: Path, choose, method_tag: str,
                     iteration_cap: Optional[int] = None) -> CutPlan:
    """Shared loop of the two baselines: while the current best competing
    path is not longer than the target, cut one of its unprotected edges
    chosen by ``choose``."""
    _validate_target_path(g, p_star)
    s, t = p_star.source, p_star.target
    p_len = path_length(g, p_star)
    protected = frozenset(p_star.edges)
    cap = iteration_cap if iteration_cap is not None else 10 * g.edge_count
    removed: set = set()
    residual = g
    while True:
        p = next_shortest_excluding(residual, s, t, p_star)
        if p is None or strictly_longer(path_length(residual, p), p_len):
            break
        candidates = [e for e in p.edges if e not in protected]
        # Two simple paths with the same endpoints cannot share all edges,
        # so there is always something to cut.
        removed.add(choose(candidates))
        if len(removed) > cap:
            raise IterationLimitError(
                f"no feasible plan within {cap} removals",
                partial={"removed_edges": frozenset(removed)},
            )
        residual = g.remove_edges(removed)
    return make_cut_plan(
        g,
        p_star,
        removed,
        method_tag,
        iterations=len(removed),
        rng_seed=None,
        certificate=_certificate(residual, p, p_len),
    )


def greedy_cost(g: Graph, p_star: Path, costs=None, weights=None,
                iteration_cap: Optional[int] = None) -> CutPlan:
    """Baseline: always cut the cheapest unprotected edge of the current
    best competing path (ties: smallest edge key)."""
    work = _working_graph(g, costs, weights)

    def choose(candidates):
        return min(candidates, key=lambda e: (work.cost(*e), e))

    return _greedy_baseline(work, p_star, choose, METHOD_GREEDY_COST, iteration_cap)


def greedy_eigenscore(g: Graph, p_star: Path, costs=None, weights=None,
                      recompute: bool = False,
                      iteration_cap: Optional[int] = None) -> CutPlan:
    """Baseline: cut the unprotected edge with the largest eigenscore per
    unit cost, where an edge's eigenscore is the product of the principal
    adjacency-eigenvector entries at its endpoints.

    Scores are computed once on the input graph; ``recompute=True``
    refreshes them after every cut instead.
    """
    work = _working_graph(g, costs, weights)
    state = {"vector": principal_eigenvector(work), "graph": work}

    def ratio(e):
        u, v = e
        score = float(state["vector"][u] * state["vector"][v])
        cost = work.cost(u, v)
        return math.inf if cost == 0 else score / cost

    def choose(candidates):
        if recompute and state["graph"] is not None:
            state["vector"] = principal_eigenvector(state["graph"])
        return min(candidates, key=lambda e: (-ratio(e), e))

    if not recompute:
        plan = _greedy_baseline(work, p_star, choose, METHOD_GREEDY_EIGENSCORE, iteration_cap)
        return plan

    # Recomputing variant tracks the residual graph alongside the loop.
    def choose_tracking(candidates):
        e = choose(candidates)
        state["graph"] = state["graph"].remove_edges([e])
        return e

    return _greedy_baseline(work, p_star, choose_tracking, METHOD_GREEDY_EIGENSCORE, iteration_cap)


def principal_eigenvector(g: Graph, tol: float = 1e-8, max_iter: int = 10000) -> np.ndarray:
    """Unit-norm nonnegative principal eigenvector of the unweighted
    adjacency matrix, by power iteration.

    Iterates with ``A + I`` so bipartite graphs (whose spectrum is
    symmetric) still converge; the residual test uses ``A`` itself:
    ``||Av - lambda*v|| <= tol * lambda`` with the Rayleigh-quotient
    estimate of ``lambda``.
    """
    n = g.node_count
    if n == 0:
        raise InputError("eigenvector of an empty graph is undefined")
    A = np.zeros((n, n))
    for u, v in g.edges():
        A[u, v] = 1.0
        A[v, u] = 1.0
    v = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(max_iter):
        av = A @ v
        nxt = av + v
        nxt /= np.linalg.norm(nxt)
        lam = float(nxt @ (A @ nxt))
        residual = float(np.linalg.norm(A @ nxt - lam * nxt))
        v = nxt
        if residual <= tol * max(lam, 1e-30):
            return v
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def run_attack(g: Graph, p_star: Path, cfg: AttackConfig, costs=None, weights=None) -> CutPlan:
    """Dispatch on ``cfg.method``."""
    if cfg.method in (METHOD_PATHATTACK_LP, METHOD_PATHATTACK_GREEDY):
        return pathattack(g, p_star, cfg, costs=costs, weights=weights)
    if cfg.method == METHOD_GREEDY_COST:
        return greedy_cost(g, p_star, costs=costs, weights=weights,
                           iteration_cap=cfg.iteration_cap)
    return greedy_eigenscore(
        g,
        p_star,
        costs=costs,
        weights=weights,
        recompute=cfg.recompute_eigenscores,
        iteration_cap=cfg.iteration_cap,
    )
