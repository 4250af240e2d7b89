"""Greedy colouring and Vizing-fan recolouring.

A fan anchored at ``x`` is a sequence of distinct edges e0, e1, ..., en at
``x`` with rim vertices y0, ..., yn, where e0 is uncoloured and the colour
of each later edge is missing at some earlier rim vertex. A fan is
foldable when x and yn share a missing colour: recolour en, truncate to
the rim vertex where the old colour of en is missing, and repeat until e0
itself gets a colour. It is reducible when yn and an earlier distinct yi
share a missing colour a; one (a, b)-chain switch with b missing at x then
makes a prefix foldable.

If no edge can extend a fan that is neither foldable nor reducible, then
summing over the distinct rim vertices z, d(z) + μ(x, z) - K >= 2. With
K = min(Δ + μ, ⌊3Δ/2⌋) that cannot happen.
"""
from __future__ import annotations

import logging
from collections import deque
from itertools import islice, product
from typing import Deque, Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..core import EdgeInstance, Multigraph
from ..exceptions import FanStuck, InvalidGraphError
from .state import EdgeColoring

logger = logging.getLogger(__name__)


SWITCH_TRIALS = 256


class Fan:
    """Fan rooted at the uncoloured instance ``root`` and anchored at ``anchor``.

    A rim vertex's missing colours are read once, when it first joins the
    rim. A failed :meth:`color_root` puts back every instance it recoloured.
    """

    def __init__(self, coloring: EdgeColoring, root: int, anchor: int) -> None:
        u, v = coloring.endpoints(root)
        if anchor not in (u, v):
            raise ValueError(f"anchor {anchor} is not an endpoint of {coloring.instance(root)}")
        self.coloring = coloring
        self.x = anchor
        self.edges: List[int] = [root]
        self.rim: List[int] = [v if anchor == u else u]
        self._used: Set[int] = {root}
        self._first: Dict[int, int] = {}
        self._pending: Deque[int] = deque()
        self._saved: Dict[int, int] = {}
        self._reach(self.rim[0])

    def color_root(self) -> None:
        """Colour the root, recolouring fan edges as needed; raises FanStuck if impossible."""

        try:
            self._extend()
        except FanStuck:
            self._rollback()
            raise

    def _extend(self) -> None:
        while True:
            if self._foldable():
                self._fold()
                return
            idx = self._reducible()
            if idx is not None:
                self._reduce(idx)
                return
            nxt = self._next_edge()
            if nxt is None:
                raise FanStuck(
                    f"fan at {self.x} stuck after {len(self.edges)} edges "
                    f"(k={self.coloring.k}, root={self.coloring.instance(self.edges[0])})"
                )
            self._append(nxt)

    def _reach(self, y: int) -> None:
        self._first[y] = len(self.rim) - 1
        self._pending.extend(sorted(self.coloring.missing(y)))

    def _foldable(self) -> bool:
        return self.coloring.shares_missing(self.x, self.rim[-1])

    def _next_edge(self) -> Optional[int]:
        # the colouring is fixed while the fan grows, so each colour is looked up once
        col = self.coloring
        while self._pending:
            idx = col.edge_at(self.x, self._pending.popleft())
            if idx is not None and idx not in self._used:
                return idx
        return None

    def _append(self, idx: int) -> None:
        u, v = self.coloring.endpoints(idx)
        y = v if u == self.x else u
        self.edges.append(idx)
        self._used.add(idx)
        self.rim.append(y)
        if y not in self._first:
            self._reach(y)

    def _reducible(self) -> Optional[int]:
        yn = self.rim[-1]
        if self._first[yn] != len(self.rim) - 1:
            return None
        for y, idx in self._first.items():
            if y != yn and self.coloring.shares_missing(y, yn):
                return idx
        return None

    def _touch(self, instances: Sequence[int]) -> None:
        for idx in instances:
            self._saved.setdefault(idx, self.coloring.color_of(idx))

    def _rollback(self) -> None:
        col = self.coloring
        for idx in self._saved:
            col.unassign(idx)
        for idx, color in self._saved.items():
            if color:
                col.assign(idx, color)
        self._saved.clear()

    def _fold(self) -> None:
        col = self.coloring
        edges, rim = self.edges, self.rim
        while True:
            new = col.common_missing(self.x, rim[-1])
            if new is None:
                raise FanStuck(f"fold lost its common missing colour at {self.x}")
            last = edges[-1]
            old = col.color_of(last)
            self._touch((last,))
            col.unassign(last)
            col.assign(last, new)
            if len(edges) == 1:
                return
            for idx, y in enumerate(rim[:-1]):
                if col.is_missing(y, old):
                    break
            else:
                raise FanStuck(f"colour {old} not missing on the fan rim")
            edges, rim = edges[: idx + 1], rim[: idx + 1]

    def _reduce(self, i: int) -> None:
        col = self.coloring
        yi, yn = self.rim[i], self.rim[-1]
        a = min(col.missing(yi) & col.missing(yn))
        b = min(col.missing(self.x))
        path = col.kempe_component(yi, a, b)
        if self.x not in _path_vertices(col, path, yi):
            self._touch(path)
            col.kempe_switch(yi, a, b)
            self.edges, self.rim = self.edges[: i + 1], self.rim[: i + 1]
        else:
            self._touch(col.kempe_component(yn, a, b))
            col.kempe_switch(yn, a, b)
        self._fold()


def _path_vertices(coloring: EdgeColoring, path: Sequence[int], start: int) -> set:
    verts = {start}
    for idx in path:
        verts.update(coloring.endpoints(idx))
    return verts


def fan_color(coloring: EdgeColoring, root: int, anchor: Optional[int] = None) -> None:
    """Colour uncoloured instance ``root``; the colouring is untouched when FanStuck is raised."""

    u, v = coloring.endpoints(root)
    c = coloring.common_missing(u, v)
    if c is not None:
        coloring.assign(root, c)
        return
    if anchor is None:
        deg = coloring.graph.degrees
        anchor = u if deg[u] <= deg[v] else v
    Fan(coloring, root, anchor).color_root()


def greedy_color(
    graph: Multigraph, k: int, order: Optional[Sequence[EdgeInstance]] = None
) -> Tuple[EdgeColoring, Optional[EdgeInstance]]:
    """Lowest common missing colour per instance; stops at the first instance with none."""

    if k <= 0:
        raise ValueError(f"greedy colouring needs k >= 1, got {k}")
    coloring = EdgeColoring(graph, k)
    sequence = graph.instances if order is None else order
    if len(sequence) != graph.m or set(sequence) != set(graph.instances):
        raise ValueError("order must be a permutation of the multigraph's instances")
    for inst in sequence:
        idx = graph.instance_index[inst]
        u, v = coloring.endpoints(idx)
        c = coloring.common_missing(u, v)
        if c is None:
            return coloring, inst
        coloring.assign(idx, c)
    return coloring, None


def recolor_edge(coloring: EdgeColoring, root: int) -> bool:
    """Try to colour ``root`` without growing the palette.

    Tries a common missing colour, a fan at each endpoint (fuller endpoint
    first), then up to ``SWITCH_TRIALS`` single (a, b)-switches with a missing
    at one end and b at the other. Returns False with the colouring
    unchanged on failure.
    """

    u, v = coloring.endpoints(root)
    c = coloring.common_missing(u, v)
    if c is not None:
        coloring.assign(root, c)
        return True
    for anchor in sorted((u, v), key=lambda w: -coloring.colored_degree(w)):
        try:
            Fan(coloring, root, anchor).color_root()
            return True
        except FanStuck:
            continue
    pairs = product(sorted(coloring.missing(u)), sorted(coloring.missing(v)))
    for a, b in islice(pairs, SWITCH_TRIALS):
        for w, p, q in ((v, a, b), (u, b, a)):
            coloring.kempe_switch(w, p, q)
            c = coloring.common_missing(u, v)
            if c is not None:
                coloring.assign(root, c)
                return True
            coloring.kempe_switch(w, p, q)
    return False


def squeeze_palette(coloring: EdgeColoring, k: int) -> Optional[EdgeColoring]:
    """Move a colouring onto colours 1..k, or None if some edge cannot be placed."""

    trial = EdgeColoring(coloring.graph, k)
    pending = []
    for idx, color in enumerate(coloring.colors):
        if 1 <= color <= k:
            trial.assign(idx, color)
        elif color:
            pending.append(idx)
    for idx in pending:
        if not recolor_edge(trial, idx):
            return None
    return trial


def _fan_coloring(graph: Multigraph, k: int, order: Sequence[int]) -> EdgeColoring:
    coloring = EdgeColoring(graph, k)
    for idx in order:
        if coloring.color_of(idx) == 0:
            fan_color(coloring, idx)
    return coloring


def shannon_vizing_palette(graph: Multigraph) -> int:
    delta, mu = graph.max_degree, graph.max_multiplicity
    return min(delta + mu, 3 * delta // 2)


def vizing_color_multi(graph: Multigraph) -> EdgeColoring:
    """Proper colouring within min(Δ + μ, ⌊3Δ/2⌋) colours."""

    k = shannon_vizing_palette(graph)
    return _fan_coloring(graph, max(k, 1), range(graph.m))


def max_degree_core(graph: Multigraph) -> List[int]:
    delta = graph.max_degree
    return [v for v, d in enumerate(graph.degrees) if d == delta and delta > 0]


def core_is_forest(graph: Multigraph) -> bool:
    """Whether every cycle passes through a vertex of degree below Δ."""

    core = max_degree_core(graph)
    support = nx.Graph()
    support.add_nodes_from(core)
    members = set(core)
    support.add_edges_from((u, v) for u, v, _ in graph.pairs if u in members and v in members)
    return nx.is_forest(support) if core else True


def vizing_color_simple(graph: Multigraph) -> EdgeColoring:
    """Δ colours when the max-degree vertices induce a forest, Δ + 1 otherwise."""

    if not graph.is_simple:
        raise InvalidGraphError("vizing_color_simple needs a simple graph; use vizing_color_multi")
    delta = graph.max_degree
    if graph.m == 0:
        return EdgeColoring(graph, 0)
    if core_is_forest(graph):
        try:
            return _core_forest_coloring(graph)
        except FanStuck:
            logger.warning("core-forest colouring got stuck; using Δ + 1 colours", extra={"n": graph.n, "m": graph.m})
    coloring = _fan_coloring(graph, delta + 1, range(graph.m))
    return squeeze_palette(coloring, delta) or coloring


def _core_forest_coloring(graph: Multigraph) -> EdgeColoring:
    """Colour away from the core, then complete core vertices in BFS order of the core forest.

    When a core vertex is completed, at most one of its neighbours (its
    parent) already has all of its edges coloured, so every fan anchored at
    it succeeds with Δ colours.
    """

    delta = graph.max_degree
    core = max_degree_core(graph)
    members = set(core)
    coloring = EdgeColoring(graph, delta)
    incident: List[List[int]] = [[] for _ in range(graph.n)]
    for idx, inst in enumerate(graph.instances):
        incident[inst.u].append(idx)
        incident[inst.v].append(idx)

    for idx, inst in enumerate(graph.instances):
        if inst.u not in members and inst.v not in members:
            fan_color(coloring, idx)

    visited = set()
    for root in core:
        if root in visited:
            continue
        visited.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for idx in incident[x]:
                if coloring.color_of(idx) == 0:
                    fan_color(coloring, idx, anchor=x)
            for y in graph.neighbors[x]:
                if y in members and y not in visited:
                    visited.add(y)
                    queue.append(y)
    return coloring
