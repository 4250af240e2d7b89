"""Sparse-regime matching removal and the regime dispatcher ``color_optimal``."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set

import networkx as nx
import numpy as np

from ..config import get_settings
from ..core import (
    EdgeInstance,
    LowerBound,
    Multigraph,
    check_second_class_conditions,
    decompose_complete,
    degree_stats,
    is_forest,
    lower_bound,
    one_factorization,
    remove_instances,
    support_graph,
)
from ..exceptions import PreconditionUnmet
from ..metrics import coloring_duration_seconds, colorings_total
from .algc import COLORED, alg_c, bounded_offenders, color_with_augmentation
from .decomposition import matching_decomposition
from .state import EdgeColoring, verify
from .vizing import core_is_forest, vizing_color_multi, vizing_color_simple

logger = logging.getLogger(__name__)


@dataclass
class ColoringOutcome:
    coloring: EdgeColoring
    colors_used: int
    target_k: int
    lower_bound: int
    first_class: bool
    strategy: str
    diagnostics: Dict[str, Any] = field(default_factory=dict)


def _far_apart(support: nx.Graph, vertices: List[int]) -> bool:
    """Every two of ``vertices`` are at distance at least three."""

    members = set(vertices)
    for v in vertices:
        near = nx.single_source_shortest_path_length(support, v, cutoff=2)
        if any(u != v and u in members for u in near):
            return False
    return True


def matching_removal_color(graph: Multigraph) -> EdgeColoring:
    """Exactly Δ colours: colour Δ goes to a matching F1 ∪ F2 covering every max-degree vertex.

    F1 takes one copy of each doubled pair and F2 one edge at each remaining
    max-degree vertex; the simple remainder has maximum degree Δ - 1 with an
    independent set of (Δ-1)-vertices and is coloured with Δ - 1 colours.
    """

    stats = degree_stats(graph)
    delta = stats.delta
    if graph.m == 0:
        return EdgeColoring(graph, 0)
    if stats.mu_max > 2:
        raise PreconditionUnmet(f"maximum multiplicity {stats.mu_max} exceeds 2")

    support = support_graph(graph)
    doubled = [(u, v) for u, v, k in graph.pairs if k == 2]
    doubled_vertices: Set[int] = {w for pair in doubled for w in pair}
    if len(doubled_vertices) != 2 * len(doubled):
        raise PreconditionUnmet("doubled edges share a vertex")
    for i, (a, b) in enumerate(doubled):
        near = set(nx.single_source_shortest_path_length(support, a, cutoff=2))
        near |= set(nx.single_source_shortest_path_length(support, b, cutoff=2))
        for c, d in doubled[i + 1:]:
            if c in near or d in near:
                raise PreconditionUnmet(f"doubled edges ({a}, {b}) and ({c}, {d}) are closer than distance 3")

    lonely = [v for v, d in enumerate(graph.degrees) if d == delta and v not in doubled_vertices]
    if not _far_apart(support, lonely):
        raise PreconditionUnmet("max-degree vertices off the doubled edges are not pairwise at distance >= 3")

    removed: List[EdgeInstance] = [EdgeInstance(u, v, 1) for u, v in doubled]
    for v, d in enumerate(graph.degrees):
        if d != delta or v in doubled_vertices:
            continue
        partner = next((u for u in graph.neighbors[v] if u not in doubled_vertices), None)
        if partner is None:
            raise PreconditionUnmet(f"max-degree vertex {v} has no neighbour outside the doubled edges")
        removed.append(EdgeInstance(min(partner, v), max(partner, v), 0))

    remainder = remove_instances(graph, removed)
    if remainder.max_degree > delta - 1:
        raise PreconditionUnmet("removed edges do not cover every max-degree vertex")
    if remainder.max_degree == delta - 1 and not core_is_forest(remainder):
        raise PreconditionUnmet("(Δ-1)-degree vertices of the remainder lie on a common cycle")
    inner = vizing_color_simple(remainder) if remainder.m else EdgeColoring(remainder, 0)
    if inner.colors_used > delta - 1:
        raise PreconditionUnmet(f"remainder needed {inner.colors_used} colours, more than Δ-1")

    # remainder instances keep their (u, v) and lowest copy indices inside G
    coloring = EdgeColoring(graph, delta)
    for inst, color in zip(remainder.instances, inner.colors):
        coloring.assign(graph.instance_index[inst], color)
    for inst in graph.instances:
        idx = graph.instance_index[inst]
        if coloring.color_of(idx) == 0:
            coloring.assign(idx, delta)
    return coloring


def _complete_decomposition_color(graph: Multigraph) -> Optional[EdgeColoring]:
    """μ_min·K_n by round-robin classes plus AlgC on the remainder."""

    c, rest = decompose_complete(graph)
    k_rest = rest.max_degree
    if rest.m:
        try:
            result = alg_c(rest, k_rest)
        except PreconditionUnmet as exc:
            logger.debug("complete decomposition rejected: %s", exc.reason)
            return None
        if result.status != COLORED:
            return None
        inner = result.coloring
    else:
        inner = EdgeColoring(rest, 0)
    rounds = one_factorization(graph.n)
    slot = {pair: r for r, matching in enumerate(rounds) for pair in matching}
    coloring = EdgeColoring(graph, k_rest + c * len(rounds))
    for inst, color in zip(rest.instances, inner.colors):
        coloring.assign(graph.instance_index[inst], color)
    for u, v, k in graph.pairs:
        base = rest.mult(u, v)
        for j in range(c):
            inst = EdgeInstance(u, v, base + j)
            coloring.assign(graph.instance_index[inst], k_rest + j * len(rounds) + slot[(u, v)] + 1)
    return coloring


def _search_color(graph: Multigraph, k: int, restarts: int, seed: int) -> Optional[EdgeColoring]:
    """Augmenting colouring at k; restarts shuffle the edge order."""

    rng = np.random.Generator(np.random.Philox(seed))
    for attempt in range(restarts + 1):
        order = None if attempt == 0 else [int(i) for i in rng.permutation(graph.m)]
        result = color_with_augmentation(graph, k, order=order, seed=seed + attempt, stop_on_elementary=False)
        if result.status == COLORED:
            return result.coloring
    return None


class _Best:
    def __init__(self) -> None:
        self.coloring: Optional[EdgeColoring] = None
        self.strategy = ""
        self.target = 0

    def offer(self, coloring: Optional[EdgeColoring], strategy: str, target: int) -> None:
        if coloring is None or not coloring.is_total:
            return
        if self.coloring is None or coloring.colors_used < self.coloring.colors_used:
            self.coloring, self.strategy, self.target = coloring, strategy, target
            logger.debug("strategy %s reached %d colours", strategy, coloring.colors_used)

    @property
    def colors(self) -> int:
        return self.coloring.colors_used if self.coloring is not None else 1 << 60


def color_optimal(graph: Multigraph, seed: Optional[int] = None) -> ColoringOutcome:
    """Proper total colouring, trying cheaper certified strategies before general search."""

    settings = get_settings()
    seed = settings.search_seed if seed is None else seed
    started = time.perf_counter()
    bound: LowerBound = lower_bound(graph)
    stats = degree_stats(graph)
    delta, mu = stats.delta, stats.mu_max
    best = _Best()
    diagnostics: Dict[str, Any] = {"lower_bound_active": bound.active, "lower_bound_exact": bound.exact}

    def done() -> bool:
        return best.colors <= bound.k

    if graph.m == 0:
        best.offer(EdgeColoring(graph, 0), "empty", 0)

    if not done() and is_forest(graph):
        best.offer(vizing_color_simple(graph), "forest", delta)

    if not done() and graph.is_simple:
        best.offer(vizing_color_simple(graph), "vizing_simple", delta)

    if not done():
        try:
            best.offer(matching_removal_color(graph), "matching_removal", delta)
        except PreconditionUnmet as exc:
            logger.debug("matching removal rejected: %s", exc.reason)

    gap = stats.gap
    if not done() and gap >= max(2, mu) and not bounded_offenders(graph, delta, 2):
        result = alg_c(graph, delta, seed=seed)
        if result.status == COLORED:
            best.offer(result.coloring, "algc_bounded", delta)
        else:
            diagnostics["algc_status"] = result.status

    if not done() and gap >= mu - stats.mu_min >= 2 and graph.n >= 2:
        best.offer(_complete_decomposition_color(graph), "complete_decomposition", delta)

    if not done():
        solved = matching_decomposition(graph, lower=bound.k, seed=seed)
        if solved is not None:
            best.offer(solved.coloring, "matching_decomposition", bound.k)
            if solved.optimal:
                diagnostics["proven_optimal"] = True

    if not done() and not diagnostics.get("proven_optimal"):
        cap = min(delta + mu, best.colors - 1)
        for k in range(bound.k, cap + 1):
            found = _search_color(graph, k, settings.search_restarts, seed)
            if found is not None:
                best.offer(found, "kempe_search", k)
                break
            logger.info("no %d-colouring found; escalating", k, extra={"k": k, "n": graph.n, "m": graph.m})

    if best.coloring is None:
        best.offer(vizing_color_multi(graph), "vizing_multi", delta + mu)

    assert best.coloring is not None
    coloring = best.coloring.compressed()
    report = verify(graph, coloring)
    if not report.valid:
        raise AssertionError(f"{best.strategy} produced an improper colouring: {report.violations[:3]}")

    first_class = coloring.colors_used == bound.k
    if not first_class and graph.n % 2 == 1 and coloring.colors_used > 1:
        diagnostics["second_class_conditions"] = sorted(
            check_second_class_conditions(graph, coloring.colors_used - 1)
        )
    elapsed = time.perf_counter() - started
    colorings_total.labels(strategy=best.strategy, first_class=str(first_class).lower()).inc()
    coloring_duration_seconds.labels(strategy=best.strategy).observe(elapsed)
    logger.debug(
        "color_optimal finished",
        extra={"strategy": best.strategy, "n": graph.n, "m": graph.m, "k": coloring.colors_used},
    )
    return ColoringOutcome(
        coloring=coloring,
        colors_used=coloring.colors_used,
        target_k=best.target,
        lower_bound=bound.k,
        first_class=first_class,
        strategy=best.strategy,
        diagnostics=diagnostics,
    )
