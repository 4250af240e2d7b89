"""Colouring and verification endpoints."""
from typing import Dict, List

from fastapi import APIRouter

from ..coloring import EdgeColoring, color_optimal, exact_coloring, verify
from ..config import get_settings
from ..core import EdgeInstance, Multigraph, lower_bound
from ..dependencies import engine_errors, to_multigraph
from ..schemas.coloring import (
    ColoredEdge,
    ColoringResponse,
    ColorRequest,
    ExactRequest,
    VerifyRequest,
    VerifyResponse,
    ViolationResponse,
)
from ..schemas.common import EdgeRef

router = APIRouter(prefix=f"{get_settings().api_prefix}/coloring", tags=["Coloring"])


def _edges(graph: Multigraph, coloring: EdgeColoring) -> List[ColoredEdge]:
    return [
        ColoredEdge(u=inst.u, v=inst.v, copy_index=inst.copy, color=color)
        for inst, color in zip(graph.instances, coloring.colors)
    ]


def _ref(inst: EdgeInstance) -> EdgeRef:
    return EdgeRef(u=inst.u, v=inst.v, copy_index=inst.copy)


@router.post("/color", response_model=ColoringResponse)
def color(payload: ColorRequest) -> ColoringResponse:
    """Colour with the regime dispatcher."""

    with engine_errors():
        graph = to_multigraph(payload.graph)
        outcome = color_optimal(graph, seed=payload.seed)
    return ColoringResponse(
        colors_used=outcome.colors_used,
        lower_bound=outcome.lower_bound,
        first_class=outcome.first_class,
        strategy=outcome.strategy,
        edges=_edges(graph, outcome.coloring),
        diagnostics=outcome.diagnostics,
    )


@router.post("/exact", response_model=ColoringResponse)
def exact(payload: ExactRequest) -> ColoringResponse:
    """Optimal colouring by exhaustive search; 413 above the edge bound.

    A requested ``max_m`` can only tighten the configured bound.
    """

    limit = get_settings().exact_max_m
    if payload.max_m is not None:
        limit = min(limit, payload.max_m)
    with engine_errors():
        graph = to_multigraph(payload.graph)
        coloring = exact_coloring(graph, max_m=limit)
        bound = lower_bound(graph).k
    return ColoringResponse(
        colors_used=coloring.colors_used,
        lower_bound=bound,
        first_class=coloring.colors_used == bound,
        strategy="exact",
        edges=_edges(graph, coloring),
    )


@router.post("/verify", response_model=VerifyResponse)
def verify_coloring(payload: VerifyRequest) -> VerifyResponse:
    with engine_errors():
        graph = to_multigraph(payload.graph)
        assignment: Dict[EdgeInstance, int] = {}
        for edge in payload.edges:
            inst = EdgeInstance(min(edge.u, edge.v), max(edge.u, edge.v), edge.copy_index)
            if inst in assignment:
                raise ValueError(f"edge {inst} listed twice")
            assignment[inst] = edge.color
        k = payload.k if payload.k is not None else max(assignment.values(), default=0)
        coloring = EdgeColoring.from_assignment(graph, k, assignment, strict=False)
        report = verify(graph, coloring)
    return VerifyResponse(
        valid=report.valid,
        colors_used=coloring.colors_used,
        violations=[
            ViolationResponse(vertex=v.vertex, color=v.color, edges=[_ref(i) for i in v.instances])
            for v in report.violations
        ],
        uncolored=[_ref(i) for i in report.uncolored],
    )
