"""AlgC: greedy colouring with Tashkinov-tree augmentation on stuck edges."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..core import EdgeInstance, Multigraph
from ..exceptions import NotBoundedError
from .state import EdgeColoring
from .tashkinov import TashkinovTree, augment, is_elementary

logger = logging.getLogger(__name__)

COLORED = "colored"
ELEMENTARY_TREE = "elementary_tree"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class AlgCResult:
    """Output (1) is status ``colored``; output (2) carries the partial colouring and its tree."""

    status: str
    k: int
    coloring: EdgeColoring
    root: Optional[EdgeInstance] = None
    tree: Optional[TashkinovTree] = None
    subgraph: Tuple[EdgeInstance, ...] = ()
    switches: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def colored(self) -> bool:
        return self.status == COLORED


def bounded_offenders(graph: Multigraph, k: int, t: int) -> List[int]:
    """Vertices breaking (k, t)-boundedness; empty when the graph is (k, t)-bounded."""

    over = [v for v, d in enumerate(graph.degrees) if d > k]
    if over:
        return over
    heavy = [v for v, d in enumerate(graph.degrees) if d > k - t]
    return heavy if len(heavy) > 1 else []


def algc_order(graph: Multigraph, k: int) -> List[int]:
    """Ascending by larger endpoint degree, ties by instance id; edges at the high-degree vertex last."""

    deg = graph.degrees
    heavy = [v for v, d in enumerate(deg) if d >= k - 1]
    w = heavy[0] if len(heavy) == 1 else None

    def key(idx: int) -> Tuple[int, int, int]:
        inst = graph.instances[idx]
        at_w = 1 if w is not None and w in (inst.u, inst.v) else 0
        return (at_w, max(deg[inst.u], deg[inst.v]), idx)

    return sorted(range(graph.m), key=key)


def color_with_augmentation(
    graph: Multigraph,
    k: int,
    order: Optional[List[int]] = None,
    seed: int = 0,
    budget_factor: Optional[int] = None,
    stop_on_elementary: bool = True,
) -> AlgCResult:
    """The AlgC loop without the boundedness gate; used by the dispatcher at arbitrary k."""

    factor = budget_factor if budget_factor is not None else get_settings().switch_budget_factor
    budget = factor * k * max(graph.m, 1)
    rng = np.random.Generator(np.random.Philox(seed))
    coloring = EdgeColoring(graph, k)
    sequence = algc_order(graph, k) if order is None else order
    switches = 0

    for idx in sequence:
        u, v = coloring.endpoints(idx)
        c = coloring.common_missing(u, v)
        if c is not None:
            coloring.assign(idx, c)
            continue
        outcome = augment(coloring, idx, budget, rng, stop_on_elementary=stop_on_elementary)
        switches += outcome.switches
        if outcome.status == COLORED:
            continue
        subgraph = tuple(
            graph.instances[i] for i, col in enumerate(coloring.colors) if col or i == idx
        )
        result = AlgCResult(
            status=outcome.status,
            k=k,
            coloring=coloring,
            root=graph.instances[idx],
            tree=outcome.tree,
            subgraph=subgraph,
            switches=switches,
        )
        if outcome.status == ELEMENTARY_TREE and outcome.tree is not None:
            size = len(outcome.tree.vertices)
            result.notes.append(f"elementary tree on {size} vertices ({'odd' if size % 2 else 'even'})")
            logger.info(
                "AlgC returned an elementary Tashkinov tree",
                extra={"k": k, "n": graph.n, "m": graph.m},
            )
        else:
            logger.info("augmentation budget exhausted", extra={"k": k, "n": graph.n, "m": graph.m})
        return result

    return AlgCResult(status=COLORED, k=k, coloring=coloring, switches=switches)


def alg_c(graph: Multigraph, k: int, seed: int = 0, budget_factor: Optional[int] = None) -> AlgCResult:
    """Either a k-edge-colouring or a partial colouring with a maximal elementary Tashkinov tree.

    Requires a (k, 2)-bounded multigraph. When a vertex w has degree at
    least k - 1 its edges come last, so a returned tree is rooted at w.
    """

    if k < 1:
        raise ValueError(f"alg_c needs k >= 1, got {k}")
    offenders = bounded_offenders(graph, k, 2)
    if offenders:
        raise NotBoundedError(f"multigraph is not ({k}, 2)-bounded", offenders)
    result = color_with_augmentation(graph, k, seed=seed, budget_factor=budget_factor)
    if result.status == ELEMENTARY_TREE:
        assert result.tree is not None
        check = is_elementary(result.coloring, result.tree.vertices)
        if not check.elementary:
            raise AssertionError(f"AlgC tree is not elementary: witness {check.witness}")
    return result
