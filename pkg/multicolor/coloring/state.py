"""Mutable per-instance colour assignment with an O(1) occupancy index."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

from ..core import EdgeInstance, Multigraph
from ..exceptions import ColoringStructureError

UNCOLORED = 0
NO_EDGE = -1


class EdgeColoring:
    """Colours 1..k on the instances of a multigraph.

    ``colors[i]`` is the colour of instance ``graph.instances[i]`` (0 when
    uncoloured). ``_holder[v][c]`` is the instance at ``v`` coloured ``c``
    or -1, and ``_free[v]`` is the set of colours missing at ``v``; both are
    kept in step so missing-colour queries never scan the palette.
    """

    def __init__(self, graph: Multigraph, k: int) -> None:
        if k < 0:
            raise ColoringStructureError(f"palette size must be non-negative, got {k}")
        self.graph = graph
        self.k = k
        self.colors: List[int] = [UNCOLORED] * graph.m
        self._holder: List[List[int]] = [[NO_EDGE] * (k + 1) for _ in range(graph.n)]
        self._free: List[Set[int]] = [set(range(1, k + 1)) for _ in range(graph.n)]
        self._endpoints: List[Tuple[int, int]] = [(inst.u, inst.v) for inst in graph.instances]
        self.proper = True

    @classmethod
    def from_assignment(
        cls,
        graph: Multigraph,
        k: int,
        assignment: Union[Mapping[EdgeInstance, int], Sequence[int]],
        strict: bool = True,
    ) -> "EdgeColoring":
        """Build from a mapping or a per-instance list.

        With ``strict=False`` conflicting colours are recorded rather than
        rejected; the result is only meant for :func:`verify`.
        """

        coloring = cls(graph, k)
        if isinstance(assignment, Mapping):
            items = []
            for inst, color in assignment.items():
                idx = graph.instance_index.get(inst)
                if idx is None:
                    raise ColoringStructureError(f"{inst} is not an instance of the multigraph")
                items.append((idx, color))
        else:
            if len(assignment) != graph.m:
                raise ColoringStructureError(
                    f"assignment has {len(assignment)} entries for {graph.m} instances"
                )
            items = list(enumerate(assignment))

        for idx, color in items:
            color = int(color)
            if color == UNCOLORED:
                continue
            if not 1 <= color <= k:
                raise ColoringStructureError(f"colour {color} outside palette 1..{k}")
            if strict:
                coloring.assign(idx, color)
                continue
            u, v = coloring._endpoints[idx]
            coloring.colors[idx] = color
            for w in (u, v):
                if coloring._holder[w][color] == NO_EDGE:
                    coloring._holder[w][color] = idx
                    coloring._free[w].discard(color)
                else:
                    coloring.proper = False
        return coloring

    def copy(self) -> "EdgeColoring":
        clone = EdgeColoring.__new__(EdgeColoring)
        clone.graph = self.graph
        clone.k = self.k
        clone.colors = list(self.colors)
        clone._holder = [list(row) for row in self._holder]
        clone._free = [set(free) for free in self._free]
        clone._endpoints = self._endpoints
        clone.proper = self.proper
        return clone

    # queries

    def endpoints(self, idx: int) -> Tuple[int, int]:
        return self._endpoints[idx]

    def instance(self, idx: int) -> EdgeInstance:
        return self.graph.instances[idx]

    def index_of(self, inst: EdgeInstance) -> int:
        try:
            return self.graph.instance_index[inst]
        except KeyError as exc:
            raise ColoringStructureError(f"{inst} is not an instance of the multigraph") from exc

    def color_of(self, idx: int) -> int:
        return self.colors[idx]

    def edge_at(self, v: int, color: int) -> Optional[int]:
        idx = self._holder[v][color]
        return None if idx == NO_EDGE else idx

    def is_missing(self, v: int, color: int) -> bool:
        return self._holder[v][color] == NO_EDGE

    def missing(self, v: int) -> Set[int]:
        return set(self._free[v])

    def shares_missing(self, u: int, v: int) -> bool:
        return not self._free[u].isdisjoint(self._free[v])

    def present(self, v: int) -> Set[int]:
        row = self._holder[v]
        return {c for c in range(1, self.k + 1) if row[c] != NO_EDGE}

    def common_missing(self, u: int, v: int) -> Optional[int]:
        """Lowest colour missing at both ``u`` and ``v``."""

        small, large = sorted((self._free[u], self._free[v]), key=len)
        return min((c for c in small if c in large), default=None)

    def colored_degree(self, v: int) -> int:
        return self.k - len(self._free[v])

    def uncolored(self) -> List[int]:
        return [i for i, c in enumerate(self.colors) if c == UNCOLORED]

    @property
    def is_total(self) -> bool:
        return UNCOLORED not in self.colors

    def used_colors(self) -> List[int]:
        return sorted({c for c in self.colors if c != UNCOLORED})

    @property
    def colors_used(self) -> int:
        return len(self.used_colors())

    def assignment(self) -> Dict[EdgeInstance, int]:
        return {inst: self.colors[i] for i, inst in enumerate(self.graph.instances)}

    # mutation

    def assign(self, idx: int, color: int) -> None:
        if not 1 <= color <= self.k:
            raise ColoringStructureError(f"colour {color} outside palette 1..{self.k}")
        if self.colors[idx] != UNCOLORED:
            self.unassign(idx)
        u, v = self._endpoints[idx]
        for w in (u, v):
            if self._holder[w][color] != NO_EDGE:
                raise ColoringStructureError(
                    f"colour {color} already used at vertex {w} by {self.instance(self._holder[w][color])}"
                )
        self.colors[idx] = color
        self._holder[u][color] = idx
        self._holder[v][color] = idx
        self._free[u].discard(color)
        self._free[v].discard(color)

    def unassign(self, idx: int) -> None:
        color = self.colors[idx]
        if color == UNCOLORED:
            return
        u, v = self._endpoints[idx]
        for w in (u, v):
            if self._holder[w][color] == idx:
                self._holder[w][color] = NO_EDGE
                self._free[w].add(color)
        self.colors[idx] = UNCOLORED

    def kempe_component(self, v: int, alpha: int, beta: int) -> List[int]:
        """Instances of the (alpha, beta)-path or cycle through ``v``."""

        seen: Set[int] = set()
        order: List[int] = []
        for first, second in ((alpha, beta), (beta, alpha)):
            z, current = v, first
            while True:
                idx = self._holder[z][current]
                if idx == NO_EDGE or idx in seen:
                    break
                seen.add(idx)
                order.append(idx)
                a, b = self._endpoints[idx]
                z = b if z == a else a
                current = second if current == first else first
        return order

    def kempe_switch(self, v: int, alpha: int, beta: int) -> List[int]:
        """Exchange alpha and beta on the component through ``v`` in place."""

        if alpha == beta:
            raise ColoringStructureError("a Kempe switch needs two distinct colours")
        for c in (alpha, beta):
            if not 1 <= c <= self.k:
                raise ColoringStructureError(f"colour {c} outside palette 1..{self.k}")
        component = self.kempe_component(v, alpha, beta)
        old = [(idx, self.colors[idx]) for idx in component]
        for idx in component:
            self.unassign(idx)
        for idx, color in old:
            self.assign(idx, beta if color == alpha else alpha)
        return component

    def compressed(self) -> "EdgeColoring":
        """Relabel the used colours onto 1..colors_used, keeping their order."""

        relabel = {c: i for i, c in enumerate(self.used_colors(), start=1)}
        out = EdgeColoring(self.graph, len(relabel))
        for idx, color in enumerate(self.colors):
            if color != UNCOLORED:
                out.assign(idx, relabel[color])
        return out


def kempe_switch(coloring: EdgeColoring, v: int, alpha: int, beta: int) -> EdgeColoring:
    """Return a copy with alpha and beta exchanged on the component through ``v``."""

    switched = coloring.copy()
    switched.kempe_switch(v, alpha, beta)
    return switched


@dataclass(frozen=True)
class Violation:
    vertex: int
    color: int
    instances: Tuple[EdgeInstance, ...]


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: Tuple[Violation, ...] = ()
    uncolored: Tuple[EdgeInstance, ...] = field(default_factory=tuple)


def verify(graph: Multigraph, coloring: EdgeColoring) -> VerificationReport:
    """Recount occupancy from scratch; valid iff total and no vertex sees a colour twice."""

    if coloring.graph != graph:
        raise ColoringStructureError("colouring belongs to a different multigraph")
    seen: Dict[Tuple[int, int], List[EdgeInstance]] = {}
    uncolored: List[EdgeInstance] = []
    for inst, color in zip(graph.instances, coloring.colors):
        if color == UNCOLORED:
            uncolored.append(inst)
            continue
        if not 1 <= color <= coloring.k:
            raise ColoringStructureError(f"colour {color} outside palette 1..{coloring.k}")
        for w in (inst.u, inst.v):
            seen.setdefault((w, color), []).append(inst)
    violations = tuple(
        Violation(vertex=w, color=c, instances=tuple(insts))
        for (w, c), insts in sorted(seen.items())
        if len(insts) > 1
    )
    return VerificationReport(
        valid=not violations and not uncolored,
        violations=violations,
        uncolored=tuple(uncolored),
    )


def emit_coloring(
    graph: Multigraph,
    coloring: EdgeColoring,
    strategy: str = "unspecified",
    first_class: Optional[bool] = None,
) -> str:
    """Header line then one ``u v copy color`` record per instance in (u, v, copy) order."""

    flag = "unknown" if first_class is None else str(first_class).lower()
    lines = [
        f"n={graph.n} m={graph.m} k={coloring.k} colors_used={coloring.colors_used} "
        f"strategy={strategy} first_class={flag}"
    ]
    lines.extend(
        f"{inst.u} {inst.v} {inst.copy} {color}" for inst, color in zip(graph.instances, coloring.colors)
    )
    return "\n".join(lines) + "\n"


def parse_coloring(graph: Multigraph, text: str) -> EdgeColoring:
    """Read a colouring document against ``graph``; conflicts are kept for verification."""

    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ColoringStructureError("empty colouring document")
    header = dict(token.split("=", 1) for token in rows[0] if "=" in token)
    try:
        n, m, k = int(header["n"]), int(header["m"]), int(header["k"])
    except (KeyError, ValueError) as exc:
        raise ColoringStructureError("colouring header must carry n=, m= and k=") from exc
    if n != graph.n or m != graph.m:
        raise ColoringStructureError(f"document is for n={n}, m={m}; multigraph has n={graph.n}, m={graph.m}")

    assignment: Dict[EdgeInstance, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise ColoringStructureError(f"line {lineno}: expected 'u v copy color'")
        try:
            u, v, copy, color = (int(x) for x in row)
        except ValueError as exc:
            raise ColoringStructureError(f"line {lineno}: non-integer field") from exc
        inst = EdgeInstance(u, v, copy)
        if inst in assignment:
            raise ColoringStructureError(f"line {lineno}: {inst} listed twice")
        assignment[inst] = color
    return EdgeColoring.from_assignment(graph, k, assignment, strict=False)
