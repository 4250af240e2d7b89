"""Optimal colouring as a minimum cover of the pairs by maximal matchings (CP-SAT)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ortools.sat.python import cp_model

from ..config import get_settings
from ..core import EdgeInstance, Multigraph, Pair
from .state import EdgeColoring

logger = logging.getLogger(__name__)

Matching = Tuple[Pair, ...]


class _TooMany(Exception):
    pass


def maximal_matchings(graph: Multigraph, limit: int) -> Optional[List[Matching]]:
    """All maximal matchings of the support, or None when there are more than ``limit``.

    Vertices are decided in increasing order: matched to a later free
    neighbour, or left unmatched when no earlier unmatched neighbour exists.
    """

    n = graph.n
    adj = graph.neighbors
    matched = [False] * n
    unmatched = [False] * n
    current: List[Pair] = []
    found: List[Matching] = []

    def visit(v: int) -> None:
        while v < n and matched[v]:
            v += 1
        if v == n:
            found.append(tuple(sorted(current)))
            if len(found) > limit:
                raise _TooMany
            return
        for u in adj[v]:
            if u > v and not matched[u]:
                matched[v] = matched[u] = True
                current.append((v, u))
                visit(v + 1)
                current.pop()
                matched[v] = matched[u] = False
        if not any(unmatched[u] for u in adj[v] if u < v):
            unmatched[v] = True
            visit(v + 1)
            unmatched[v] = False

    try:
        visit(0)
    except _TooMany:
        return None
    return found


@dataclass
class DecompositionResult:
    coloring: EdgeColoring
    colors: int
    optimal: bool
    matchings: int


def matching_decomposition(
    graph: Multigraph,
    lower: int = 0,
    max_matchings: Optional[int] = None,
    time_limit: Optional[float] = None,
    seed: int = 0,
) -> Optional[DecompositionResult]:
    """Minimise Σ x_M subject to Σ_{M∋e} x_M ≥ μ(e); None when out of scope or unsolved."""

    settings = get_settings()
    cap = max_matchings if max_matchings is not None else settings.decomposition_max_matchings
    limit = time_limit if time_limit is not None else settings.decomposition_time_limit_seconds
    if graph.m == 0:
        return DecompositionResult(EdgeColoring(graph, 0), 0, True, 0)

    matchings = maximal_matchings(graph, cap)
    if matchings is None:
        logger.debug("too many maximal matchings for decomposition", extra={"n": graph.n, "m": graph.m})
        return None

    containing: Dict[Pair, List[int]] = {}
    for i, matching in enumerate(matchings):
        for pair in matching:
            containing.setdefault(pair, []).append(i)

    model = cp_model.CpModel()
    mu = graph.max_multiplicity
    x = [model.NewIntVar(0, mu, f"x_{i}") for i in range(len(matchings))]
    for u, v, k in graph.pairs:
        model.Add(sum(x[i] for i in containing[(u, v)]) >= k)
    if lower > 0:
        model.Add(sum(x) >= lower)
    model.Minimize(sum(x))

    solver = cp_model.CpSolver()
    solver.parameters.max_time_in_seconds = limit
    solver.parameters.num_search_workers = 1
    solver.parameters.random_seed = seed % (1 << 31)
    status = solver.Solve(model)
    logger.debug(
        "decomposition solver finished: %s", solver.StatusName(status), extra={"n": graph.n, "m": graph.m}
    )
    if status not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        return None

    classes: List[Matching] = []
    for i, matching in enumerate(matchings):
        classes.extend([matching] * solver.Value(x[i]))

    coloring = EdgeColoring(graph, len(classes))
    for u, v, k in graph.pairs:
        slots = [c for c, matching in enumerate(classes, start=1) if (u, v) in matching][:k]
        for copy, color in enumerate(slots):
            coloring.assign(graph.instance_index[EdgeInstance(u, v, copy)], color)
    coloring = coloring.compressed()
    return DecompositionResult(
        coloring=coloring,
        colors=coloring.colors_used,
        optimal=status == cp_model.OPTIMAL,
        matchings=len(matchings),
    )
