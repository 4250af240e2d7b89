"""Multigraph values, degree statistics, density certificates and decompositions."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import get_settings
from .exceptions import ExhaustiveLimitError, InvalidGraphError, PreconditionUnmet

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
MatchingClass = List[Pair]


@dataclass(frozen=True, order=True)
class EdgeInstance:
    """One copy of the pair {u, v}; ordering is (u, v, copy)."""

    u: int
    v: int
    copy: int

    @property
    def pair(self) -> Pair:
        return (self.u, self.v)


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph on vertices 0..n-1.

    ``pairs`` holds ``(u, v, mult)`` with ``u < v`` and ``mult >= 1`` in
    lexicographic order. Use :func:`build` rather than the constructor.
    """

    n: int
    pairs: Tuple[Tuple[int, int, int], ...] = ()

    @classmethod
    def empty(cls, n: int) -> "Multigraph":
        return build(n, [])

    @cached_property
    def multiplicities(self) -> Dict[Pair, int]:
        return {(u, v): k for u, v, k in self.pairs}

    def mult(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.multiplicities.get((u, v), 0)

    @cached_property
    def m(self) -> int:
        return sum(k for _, _, k in self.pairs)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.n
        for u, v, k in self.pairs:
            deg[u] += k
            deg[v] += k
        return tuple(deg)

    @cached_property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.pairs:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def instances(self) -> Tuple[EdgeInstance, ...]:
        return tuple(EdgeInstance(u, v, c) for u, v, k in self.pairs for c in range(k))

    @cached_property
    def instance_index(self) -> Dict[EdgeInstance, int]:
        return {inst: i for i, inst in enumerate(self.instances)}

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def max_multiplicity(self) -> int:
        return max((k for _, _, k in self.pairs), default=0)

    @property
    def is_simple(self) -> bool:
        return self.max_multiplicity <= 1

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v, k in self.pairs:
            mat[u, v] = k
            mat[v, u] = k
        return mat

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m}, pairs={len(self.pairs)})"


@dataclass(frozen=True)
class DegreeStats:
    degrees: Tuple[int, ...]
    delta: int
    min_degree: int
    d2: int
    mu_max: int
    mu_min: int

    @property
    def gap(self) -> int:
        return self.delta - self.d2


@dataclass(frozen=True)
class DensityWitness:
    """Vertex subset S certifying ρ(G) ≥ e(G[S]) / ⌊|S|/2⌋."""

    vertices: Tuple[int, ...]
    edges_inside: int
    value: Fraction

    @property
    def ceil(self) -> int:
        return math.ceil(self.value)


@dataclass(frozen=True)
class LowerBound:
    k: int
    delta: int
    witness: DensityWitness
    active: str  # "degree" or "density"
    exact: bool


def build(n: int, edges: Iterable[Sequence[int]]) -> Multigraph:
    """Build a canonical multigraph from ``(u, v, mult)`` triples; duplicate pairs accumulate."""

    if n < 0:
        raise InvalidGraphError(f"vertex count must be non-negative, got {n}")
    acc: Dict[Pair, int] = defaultdict(int)
    for triple in edges:
        u, v, k = (int(x) for x in triple)
        if u == v:
            raise InvalidGraphError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraphError(f"vertex out of range in pair ({u}, {v}) for n={n}")
        if k < 0:
            raise InvalidGraphError(f"negative multiplicity {k} on pair ({u}, {v})")
        acc[(min(u, v), max(u, v))] += k
    pairs = tuple(sorted((u, v, k) for (u, v), k in acc.items() if k > 0))
    return Multigraph(n=n, pairs=pairs)


def degree_stats(graph: Multigraph) -> DegreeStats:
    degrees = tuple(sorted(graph.degrees, reverse=True))
    n = graph.n
    if n >= 2 and len(graph.pairs) == n * (n - 1) // 2:
        mu_min = min(k for _, _, k in graph.pairs)
    else:
        mu_min = 0
    return DegreeStats(
        degrees=degrees,
        delta=degrees[0] if degrees else 0,
        min_degree=degrees[-1] if degrees else 0,
        d2=degrees[1] if n >= 2 else 0,
        mu_max=graph.max_multiplicity,
        mu_min=mu_min,
    )


def edges_inside(graph: Multigraph, subset: Iterable[int]) -> int:
    members = set(subset)
    return sum(k for u, v, k in graph.pairs if u in members and v in members)


def rho_of_subset(graph: Multigraph, subset: Iterable[int]) -> Fraction:
    """Exact e(G[S]) / ⌊|S|/2⌋ for |S| ≥ 2."""

    members = set(subset)
    if len(members) < 2:
        raise InvalidGraphError("density is defined for subsets of at least two vertices")
    if any(not 0 <= v < graph.n for v in members):
        raise InvalidGraphError(f"subset {sorted(members)} has vertices outside 0..{graph.n - 1}")
    return Fraction(edges_inside(graph, members), len(members) // 2)


def _zero_witness() -> DensityWitness:
    return DensityWitness(vertices=(), edges_inside=0, value=Fraction(0))


def _witness(graph: Multigraph, vertices: Iterable[int]) -> DensityWitness:
    members = tuple(sorted(vertices))
    inside = edges_inside(graph, members)
    return DensityWitness(vertices=members, edges_inside=inside, value=Fraction(inside, len(members) // 2))


def _subset_tables(graph: Multigraph) -> Tuple[np.ndarray, np.ndarray]:
    """Edge counts and sizes for every vertex mask (bit j is vertex j)."""

    n = graph.n
    total = 1 << n
    inside = np.zeros(total, dtype=np.int64)
    sizes = np.zeros(total, dtype=np.int8)
    mat = graph.adjacency_matrix()
    for i in range(n):
        low = 1 << i
        # contribution of vertex i for every mask over vertices < i
        contrib = np.zeros(1, dtype=np.int64)
        for j in range(i):
            contrib = np.concatenate((contrib, contrib + mat[i, j]))
        inside[low:2 * low] = inside[:low] + contrib
        sizes[low:2 * low] = sizes[:low] + 1
    return inside, sizes


def _lex_rank(masks: np.ndarray, n: int) -> np.ndarray:
    """Bit-reversed masks: the largest value is the lexicographically smallest sorted subset."""

    rank = np.zeros_like(masks)
    for j in range(n):
        rank |= ((masks >> j) & 1) << (n - 1 - j)
    return rank


def rho_exact(graph: Multigraph, max_n: Optional[int] = None) -> DensityWitness:
    """Exhaustive ρ(G) over all 2^n subsets.

    Ties prefer odd |S|, then smaller |S|, then the lexicographically
    smallest sorted subset.
    """

    limit = max_n if max_n is not None else get_settings().rho_exhaustive_max_n
    if graph.n > limit:
        raise ExhaustiveLimitError(
            f"rho_exact is limited to n <= {limit} (got n={graph.n}); use rho_fast",
            limit=limit,
            actual=graph.n,
        )
    if graph.n < 2 or graph.m == 0:
        return _zero_witness()

    inside, sizes = _subset_tables(graph)
    halves = sizes.astype(np.int64) // 2

    best_per_half: Dict[int, int] = {}
    for h in range(1, graph.n // 2 + 1):
        best_per_half[h] = int(inside[halves == h].max())
    rho = max(Fraction(e, h) for h, e in best_per_half.items())

    candidates: List[np.ndarray] = []
    for h, e in best_per_half.items():
        if Fraction(e, h) == rho:
            candidates.append(np.flatnonzero((halves == h) & (inside == e)))
    masks = np.concatenate(candidates).astype(np.int64)
    cand_sizes = sizes[masks].astype(np.int64)

    odd = masks[cand_sizes % 2 == 1]
    if odd.size:
        masks = odd
        cand_sizes = sizes[masks].astype(np.int64)
    smallest = cand_sizes.min()
    masks = masks[cand_sizes == smallest]
    chosen = int(masks[np.argmax(_lex_rank(masks, graph.n))])

    vertices = tuple(j for j in range(graph.n) if chosen >> j & 1)
    witness = DensityWitness(vertices=vertices, edges_inside=int(inside[chosen]), value=rho)
    logger.debug("rho_exact witness", extra={"n": graph.n, "m": graph.m})
    return witness


def rho_fast(graph: Multigraph) -> DensityWitness:
    """Valid lower bound on ρ(G): the better of ρ(V) and a greedy peeling witness."""

    n = graph.n
    if n < 2 or graph.m == 0:
        return _zero_witness()

    best = _witness(graph, range(n))
    mat = graph.adjacency_matrix()
    alive = np.ones(n, dtype=bool)
    current_edges = graph.m
    size = n
    while size > 2:
        inner_degree = mat[:, alive].sum(axis=1)
        inner_degree = np.where(alive, inner_degree, np.iinfo(np.int64).max)
        # removing the vertex of least inner degree maximises ρ of the remainder
        v = int(np.argmin(inner_degree))
        current_edges -= int(inner_degree[v])
        alive[v] = False
        size -= 1
        if size % 2 == 1:
            value = Fraction(current_edges, size // 2)
            if value > best.value:
                best = DensityWitness(
                    vertices=tuple(int(x) for x in np.flatnonzero(alive)),
                    edges_inside=current_edges,
                    value=value,
                )
    return best


def lower_bound(graph: Multigraph, max_n: Optional[int] = None) -> LowerBound:
    """max{Δ, ⌈ρ⌉}, with ρ exact when n is within the exhaustive bound."""

    limit = max_n if max_n is not None else get_settings().rho_exhaustive_max_n
    exact = graph.n <= limit
    witness = rho_exact(graph, max_n=limit) if exact else rho_fast(graph)
    delta = graph.max_degree
    density = witness.ceil
    if density > delta:
        return LowerBound(k=density, delta=delta, witness=witness, active="density", exact=exact)
    return LowerBound(k=delta, delta=delta, witness=witness, active="degree", exact=exact)


def complete_multigraph(n: int, multiplicity: int) -> Multigraph:
    if multiplicity <= 0:
        return Multigraph.empty(n)
    return build(n, [(u, v, multiplicity) for u in range(n) for v in range(u + 1, n)])


def union(first: Multigraph, second: Multigraph) -> Multigraph:
    """Edge-disjoint union (multiplicities add) on max(n1, n2) vertices."""

    return build(max(first.n, second.n), list(first.pairs) + list(second.pairs))


def decompose_complete(graph: Multigraph) -> Tuple[int, Multigraph]:
    """Split G into μ_min·K_n plus the remainder G2."""

    c = degree_stats(graph).mu_min
    if c == 0:
        return 0, graph
    rest = build(graph.n, [(u, v, k - c) for u, v, k in graph.pairs])
    return c, rest


def one_factorization(n: int) -> List[MatchingClass]:
    """Round-robin colour classes of K_n: n-1 perfect matchings (n even) or n near-perfect ones."""

    if n < 2:
        raise InvalidGraphError("one_factorization needs at least two vertices")
    size = n if n % 2 == 0 else n + 1
    hub = size - 1
    rounds: List[MatchingClass] = []
    for r in range(size - 1):
        matching = [(r, hub)]
        for i in range(1, size // 2):
            matching.append(((r + i) % hub, (r - i) % hub))
        rounds.append(sorted((min(a, b), max(a, b)) for a, b in matching if a < n and b < n))
    return rounds


def check_second_class_conditions(graph: Multigraph, k: int) -> FrozenSet[str]:
    """Conditions (a)-(d) that hold for (G, k); at least one holds whenever χ′(G) > k."""

    if graph.n % 2 == 0:
        raise PreconditionUnmet("second-class conditions need an odd number of vertices")
    stats = degree_stats(graph)
    held = set()
    if k <= stats.delta - 1:
        held.add("a")
    if k <= stats.d2 + 2:
        held.add("b")
    if 9 * stats.mu_max - 24 > 10 * stats.mu_min:
        held.add("c")
    if 2 * graph.m > (graph.n - 1) * k:
        held.add("d")
    return frozenset(held)


def shannon_multigraph(delta: int) -> Multigraph:
    """Triangle whose pairs carry ⌈Δ/2⌉, ⌊Δ/2⌋ and ⌊Δ/2⌋ edges; needs ⌊3Δ/2⌋ colours."""

    if delta < 1:
        raise InvalidGraphError("Shannon multigraph needs delta >= 1")
    hi, lo = (delta + 1) // 2, delta // 2
    if delta % 2 == 0:
        return build(3, [(0, 1, hi), (0, 2, hi), (1, 2, hi)])
    return build(3, [(0, 1, hi), (0, 2, lo), (1, 2, lo)])


def support_graph(graph: Multigraph) -> nx.Graph:
    support = nx.Graph()
    support.add_nodes_from(range(graph.n))
    support.add_edges_from(((u, v, {"mult": k}) for u, v, k in graph.pairs))
    return support


def is_forest(graph: Multigraph) -> bool:
    """True when G has no cycle; a doubled pair counts as a 2-cycle."""

    if not graph.is_simple:
        return False
    return nx.is_forest(support_graph(graph)) if graph.n else True


def induced_subgraph(graph: Multigraph, subset: Iterable[int]) -> Multigraph:
    """G[S] with original vertex labels."""

    members = set(subset)
    return build(graph.n, [(u, v, k) for u, v, k in graph.pairs if u in members and v in members])


def remove_instances(graph: Multigraph, removed: Iterable[EdgeInstance]) -> Multigraph:
    """Drop the given instances, one unit of multiplicity each."""

    counts = dict(graph.multiplicities)
    for inst in removed:
        left = counts.get(inst.pair, 0)
        if left <= 0:
            raise InvalidGraphError(f"cannot remove {inst}: pair absent")
        counts[inst.pair] = left - 1
    return build(graph.n, [(u, v, k) for (u, v), k in counts.items()])


def emit_multigraph(graph: Multigraph) -> str:
    """Text document: header ``n pairs`` then ``u v mult`` lines in lexicographic order."""

    lines = [f"{graph.n} {len(graph.pairs)}"]
    lines.extend(f"{u} {v} {k}" for u, v, k in graph.pairs)
    return "\n".join(lines) + "\n"


def parse_multigraph(text: str) -> Multigraph:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise InvalidGraphError("empty multigraph document")
    try:
        header = [int(x) for x in rows[0]]
    except ValueError as exc:
        raise InvalidGraphError(f"malformed header {' '.join(rows[0])!r}") from exc
    if len(header) != 2 or header[0] < 0 or header[1] < 0:
        raise InvalidGraphError("header must be 'n pairs' with non-negative integers")
    n, declared = header
    body = rows[1:]
    if len(body) != declared:
        raise InvalidGraphError(f"header declares {declared} pairs but {len(body)} lines follow")

    triples: List[Tuple[int, int, int]] = []
    previous: Optional[Pair] = None
    for lineno, row in enumerate(body, start=2):
        if len(row) != 3:
            raise InvalidGraphError(f"line {lineno}: expected 'u v mult'")
        try:
            u, v, k = (int(x) for x in row)
        except ValueError as exc:
            raise InvalidGraphError(f"line {lineno}: non-integer field") from exc
        if u == v:
            raise InvalidGraphError(f"line {lineno}: loop at vertex {u}")
        if u > v:
            raise InvalidGraphError(f"line {lineno}: pair must be written with u < v")
        if not (0 <= u and v < n):
            raise InvalidGraphError(f"line {lineno}: vertex out of range for n={n}")
        if k < 1:
            raise InvalidGraphError(f"line {lineno}: multiplicity must be at least 1")
        if previous is not None and (u, v) <= previous:
            kind = "duplicate" if (u, v) == previous else "unsorted"
            raise InvalidGraphError(f"line {lineno}: {kind} pair ({u}, {v})")
        previous = (u, v)
        triples.append((u, v, k))
    return build(n, triples)
