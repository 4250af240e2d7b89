"""Density parameter and lower-bound endpoints."""
from fastapi import APIRouter

from ..config import get_settings
from ..core import degree_stats, lower_bound, rho_exact, rho_fast
from ..dependencies import engine_errors, to_multigraph, witness_response
from ..schemas.common import MultigraphPayload
from ..schemas.graphs import LowerBoundResponse, RhoRequest, RhoResponse

router = APIRouter(prefix=f"{get_settings().api_prefix}/graphs", tags=["Graphs"])


@router.post("/rho", response_model=RhoResponse)
def rho(payload: RhoRequest) -> RhoResponse:
    """Density witness; ``exact`` scans every subset and is refused above the configured n."""

    with engine_errors():
        graph = to_multigraph(payload.graph)
        witness = rho_exact(graph) if payload.method == "exact" else rho_fast(graph)
    return RhoResponse(method=payload.method, witness=witness_response(witness))


@router.post("/lower-bound", response_model=LowerBoundResponse)
def graph_lower_bound(payload: MultigraphPayload) -> LowerBoundResponse:
    with engine_errors():
        graph = to_multigraph(payload)
        bound = lower_bound(graph)
        stats = degree_stats(graph)
    return LowerBoundResponse(
        k=bound.k,
        delta=bound.delta,
        active=bound.active,
        exact=bound.exact,
        degrees=list(stats.degrees),
        mu_max=stats.mu_max,
        mu_min=stats.mu_min,
        witness=witness_response(bound.witness),
    )
