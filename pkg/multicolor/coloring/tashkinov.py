"""Tashkinov trees: growth, elementarity and budgeted Kempe augmentation."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from ..config import get_settings
from ..exceptions import (
    BudgetExhausted,
    ColoringStructureError,
    IllegalTupleError,
    NotElementaryError,
)
from ..metrics import budget_exhaustions_total, kempe_switches_total
from .state import UNCOLORED, EdgeColoring
from .vizing import SWITCH_TRIALS, recolor_edge

logger = logging.getLogger(__name__)

ElementaryWitness = Tuple[int, int, int]  # (colour, u, v) with u < v
Switch = Tuple[int, int, int]  # (vertex, alpha, beta)


@dataclass(frozen=True)
class TashkinovTree:
    """Vertices w0..wq and instance ids e0..e(q-1); e0 is the uncoloured root."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def root(self) -> int:
        return self.edges[0]

    def missing_union(self, coloring: EdgeColoring) -> Set[int]:
        colors: Set[int] = set()
        for w in self.vertices:
            colors |= coloring.missing(w)
        return colors


@dataclass(frozen=True)
class ElementaryCheck:
    elementary: bool
    witness: Optional[ElementaryWitness] = None

    def __bool__(self) -> bool:
        return self.elementary


def is_elementary(coloring: EdgeColoring, vertices: Sequence[int]) -> ElementaryCheck:
    """No colour missing at two distinct vertices; the witness is the smallest (colour, u, v)."""

    members = sorted(set(vertices))
    for c in range(1, coloring.k + 1):
        holders = [w for w in members if coloring.is_missing(w, c)]
        if len(holders) >= 2:
            return ElementaryCheck(False, (c, holders[0], holders[1]))
    return ElementaryCheck(True)


def grow_tashkinov(coloring: EdgeColoring, root: int) -> TashkinovTree:
    """Maximal tree from the uncoloured ``root``; extensions are taken by colour, then instance id."""

    if coloring.color_of(root) != UNCOLORED:
        raise ColoringStructureError(f"tree root {coloring.instance(root)} is already coloured")
    x, y = coloring.endpoints(root)
    vertices: List[int] = [x, y]
    inside = {x, y}
    edges: List[int] = [root]
    missing = coloring.missing(x) | coloring.missing(y)

    while True:
        extension: Optional[int] = None
        for c in sorted(missing):
            best: Optional[int] = None
            for w in vertices:
                idx = coloring.edge_at(w, c)
                if idx is None:
                    continue
                a, b = coloring.endpoints(idx)
                if a in inside and b in inside:
                    continue
                if best is None or idx < best:
                    best = idx
            if best is not None:
                extension = best
                break
        if extension is None:
            return TashkinovTree(vertices=tuple(vertices), edges=tuple(edges))
        a, b = coloring.endpoints(extension)
        new = b if a in inside else a
        vertices.append(new)
        inside.add(new)
        edges.append(extension)
        missing |= coloring.missing(new)


def tree_problems(coloring: EdgeColoring, tree: TashkinovTree) -> List[str]:
    """Violated tree invariants (empty when ``tree`` is a maximal Tashkinov tree)."""

    problems: List[str] = []
    if len(set(tree.vertices)) != len(tree.vertices):
        problems.append("repeated vertex")
    if len(tree.edges) != len(tree.vertices) - 1:
        problems.append("edge count is not |V(T)| - 1")
        return problems
    if coloring.color_of(tree.root) != UNCOLORED:
        problems.append("root edge is coloured")
    if set(coloring.endpoints(tree.root)) != set(tree.vertices[:2]):
        problems.append("root edge does not join w0 and w1")

    seen = set(tree.vertices[:2])
    missing = coloring.missing(tree.vertices[0]) | coloring.missing(tree.vertices[1])
    for i, idx in enumerate(tree.edges[1:], start=2):
        new = tree.vertices[i]
        a, b = coloring.endpoints(idx)
        old = b if a == new else a
        if new not in (a, b) or old not in seen:
            problems.append(f"edge {i - 1} does not join w{i} to an earlier vertex")
        if coloring.color_of(idx) not in missing:
            problems.append(f"edge {i - 1} colour is not missing at an earlier vertex")
        seen.add(new)
        missing |= coloring.missing(new)

    for w in tree.vertices:
        for c in missing:
            idx = coloring.edge_at(w, c)
            if idx is not None and not set(coloring.endpoints(idx)) <= seen:
                problems.append(f"boundary edge {coloring.instance(idx)} carries tree colour {c}")
                return problems
    return problems


def legal_tuple_problems(coloring: EdgeColoring, root: int) -> List[str]:
    """Conditions on (G', k, e0, φ) with G' the coloured edges plus e0."""

    k = coloring.k
    problems: List[str] = []
    if k < 1:
        problems.append("k must be a positive integer")
    if coloring.color_of(root) != UNCOLORED:
        problems.append("e0 must be uncoloured")
    x, y = coloring.endpoints(root)
    degree = [coloring.colored_degree(v) for v in range(coloring.graph.n)]
    degree[x] += 1
    degree[y] += 1
    if max(degree, default=0) > k:
        problems.append(f"maximum degree {max(degree)} exceeds k={k}")
    if degree[x] + degree[y] > 2 * k - 2:
        problems.append(f"d(x)+d(y)={degree[x] + degree[y]} exceeds 2k-2={2 * k - 2}")
    heavy = [v for v in range(coloring.graph.n) if v not in (x, y) and degree[v] > k - 1]
    if heavy:
        problems.append(f"vertices {heavy} off e0 have degree above k-1")
    return problems


@dataclass
class AugmentOutcome:
    status: str  # "colored", "elementary_tree" or "budget_exhausted"
    switches: int
    tree: Optional[TashkinovTree] = None


def _candidate_switches(
    coloring: EdgeColoring, root: int, tree: TashkinovTree, witness: Optional[ElementaryWitness]
) -> List[Switch]:
    x, y = coloring.endpoints(root)
    candidates: List[Switch] = []
    if witness is not None:
        alpha, u, v = witness
        palette = tree.missing_union(coloring) | {coloring.color_of(i) for i in tree.edges[1:]}
        for w in (u, v):
            for beta in sorted(palette - {alpha}):
                if not coloring.is_missing(w, beta):
                    candidates.append((w, alpha, beta))
    for a in sorted(coloring.missing(x)):
        for b in sorted(coloring.missing(y)):
            if a != b:
                candidates.append((y, a, b))
                candidates.append((x, b, a))
    return candidates


def _trial_switches(candidates: List[Switch], rng: np.random.Generator) -> List[Switch]:
    if len(candidates) <= SWITCH_TRIALS:
        return candidates
    picked = np.sort(rng.choice(len(candidates), size=SWITCH_TRIALS, replace=False))
    return [candidates[int(i)] for i in picked]


def augment(
    coloring: EdgeColoring,
    root: int,
    budget: int,
    rng: np.random.Generator,
    stop_on_elementary: bool = True,
) -> AugmentOutcome:
    """Colour ``root`` in place by fans and Kempe switches guided by the tree's elementarity witness.

    Each round tries up to ``SWITCH_TRIALS`` candidate switches (all of them
    when there are that few, otherwise a random sample in candidate order)
    and keeps the first one after which both ends of the root share a
    missing colour; otherwise a random candidate is committed and the tree
    regrown.
    """

    x, y = coloring.endpoints(root)
    switches = 0
    while True:
        if recolor_edge(coloring, root):
            return AugmentOutcome("colored", switches)
        tree = grow_tashkinov(coloring, root)
        check = is_elementary(coloring, tree.vertices)
        if check.elementary and stop_on_elementary:
            return AugmentOutcome("elementary_tree", switches, tree)
        if switches >= budget:
            budget_exhaustions_total.inc()
            return AugmentOutcome("budget_exhausted", switches, tree)

        candidates = _candidate_switches(coloring, root, tree, check.witness)
        if not candidates:
            return AugmentOutcome("budget_exhausted", switches, tree)
        for w, a, b in _trial_switches(candidates, rng):
            coloring.kempe_switch(w, a, b)
            c = coloring.common_missing(x, y)
            if c is not None:
                coloring.assign(root, c)
                kempe_switches_total.inc()
                return AugmentOutcome("colored", switches + 1)
            coloring.kempe_switch(w, a, b)
        w, a, b = candidates[int(rng.integers(len(candidates)))]
        coloring.kempe_switch(w, a, b)
        switches += 1
        kempe_switches_total.inc()
        if switches % 1000 == 0:
            logger.debug("augmentation still searching", extra={"k": coloring.k})


def augment_tashkinov(
    coloring: EdgeColoring,
    tree: TashkinovTree,
    witness: ElementaryWitness,
    budget: Optional[int] = None,
    seed: int = 0,
    budget_factor: Optional[int] = None,
) -> EdgeColoring:
    """Return a copy of ``coloring`` in which the tree's root edge is coloured.

    Raises IllegalTupleError when (G', k, e0, φ, T) is not legal,
    NotElementaryError when the witness does not show V(T) non-elementary,
    and BudgetExhausted after the switch budget (default factor·k·m).
    """


    root = tree.root
    problems = legal_tuple_problems(coloring, root)
    problems += [p for p in tree_problems(coloring, tree) if not p.startswith("boundary")]
    if problems:
        raise IllegalTupleError("; ".join(problems))
    alpha, u, v = witness
    if not (u != v and u in tree.vertices and v in tree.vertices
            and coloring.is_missing(u, alpha) and coloring.is_missing(v, alpha)):
        raise NotElementaryError(f"witness {witness} does not show V(T) non-elementary")

    factor = budget_factor if budget_factor is not None else get_settings().switch_budget_factor
    limit = budget if budget is not None else factor * coloring.k * max(coloring.graph.m, 1)
    work = coloring.copy()
    outcome = augment(work, root, limit, np.random.Generator(np.random.Philox(seed)), stop_on_elementary=False)
    if outcome.status != "colored":
        raise BudgetExhausted(
            f"root {coloring.instance(root)} still uncoloured after {outcome.switches} switches",
            switches=outcome.switches,
            k=coloring.k,
            root=coloring.instance(root),
        )
    return work
