"""Brute-force chromatic index for tiny multigraphs."""
from __future__ import annotations

import logging
from typing import List, Optional

from ..config import get_settings
from ..core import Multigraph, lower_bound
from ..exceptions import ExhaustiveLimitError
from .state import EdgeColoring
from .vizing import vizing_color_multi

logger = logging.getLogger(__name__)


def _colorable(graph: Multigraph, k: int) -> Optional[List[int]]:
    """A k-colouring by backtracking, or None.

    Colours enter in increasing order and parallel copies take increasing
    colours; every colouring has a representative meeting both rules.
    """

    insts = graph.instances
    m = len(insts)
    used = [[False] * (k + 1) for _ in range(graph.n)]
    colors = [0] * m

    def place(i: int, highest: int) -> bool:
        if i == m:
            return True
        inst = insts[i]
        start = colors[i - 1] + 1 if inst.copy > 0 else 1
        for c in range(start, min(highest + 1, k) + 1):
            if used[inst.u][c] or used[inst.v][c]:
                continue
            used[inst.u][c] = used[inst.v][c] = True
            colors[i] = c
            if place(i + 1, max(highest, c)):
                return True
            used[inst.u][c] = used[inst.v][c] = False
        colors[i] = 0
        return False

    return list(colors) if place(0, 0) else None


def exact_coloring(graph: Multigraph, max_m: Optional[int] = None) -> EdgeColoring:
    """An optimal colouring; raises ExhaustiveLimitError above the instance bound."""

    limit = max_m if max_m is not None else get_settings().exact_max_m
    if graph.m > limit:
        raise ExhaustiveLimitError(
            f"exact chromatic index is limited to m <= {limit} instances (got m={graph.m})",
            limit=limit,
            actual=graph.m,
        )
    if graph.m == 0:
        return EdgeColoring(graph, 0)
    upper = vizing_color_multi(graph).compressed()
    for k in range(lower_bound(graph).k, upper.k):
        found = _colorable(graph, k)
        if found is not None:
            return EdgeColoring.from_assignment(graph, k, found)
    return upper


def exact_chromatic_index(graph: Multigraph, max_m: Optional[int] = None) -> int:
    return exact_coloring(graph, max_m=max_m).colors_used
