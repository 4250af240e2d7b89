"""Random multigraph and prediction endpoints."""
from typing import Optional

from fastapi import APIRouter, Query

from ..config import get_settings
from ..dependencies import engine_errors
from ..sampling import SampleConfig, predict, sample
from ..schemas.common import EdgeSpec
from ..schemas.sampling import PredictionResponse, SampleRequest, SampleResponse

router = APIRouter(prefix=f"{get_settings().api_prefix}/sampling", tags=["Sampling"])


@router.post("/sample", response_model=SampleResponse)
def sample_multigraph(payload: SampleRequest) -> SampleResponse:
    with engine_errors():
        graph = sample(SampleConfig(n=payload.n, m=payload.m, seed=payload.seed, model=payload.model))
    return SampleResponse(
        n=graph.n,
        m=graph.m,
        seed=payload.seed,
        model=payload.model,
        edges=[EdgeSpec(u=u, v=v, multiplicity=k) for u, v, k in graph.pairs],
    )


@router.get("/predict", response_model=PredictionResponse)
def prediction(
    n: int = Query(..., ge=2, le=10**6),
    m: int = Query(..., ge=0),
    epsilon: Optional[float] = Query(None, gt=0, lt=1),
) -> PredictionResponse:
    """Degree envelope, full-set density and regime for M(n, m)."""

    eps = epsilon if epsilon is not None else get_settings().default_epsilon
    with engine_errors():
        result = predict(n, m, eps)
    return PredictionResponse(
        n=result.n,
        m=result.m,
        epsilon=result.epsilon,
        d_plus=result.d_plus,
        rho_full=str(result.rho_full),
        threshold=result.threshold,
        regime=result.regime,
        d0=result.d0,
        d0_95=result.d0_95,
        mu_bound=result.mu_bound,
    )
