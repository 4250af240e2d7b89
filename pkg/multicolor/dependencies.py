"""Shared helpers for the FastAPI routers."""
from contextlib import contextmanager
from typing import Iterator

from fastapi import HTTPException, status

from .core import DensityWitness, Multigraph, build
from .exceptions import ExhaustiveLimitError, MulticolorError
from .schemas.common import MultigraphPayload, WitnessResponse


def to_multigraph(payload: MultigraphPayload) -> Multigraph:
    return build(payload.n, ((e.u, e.v, e.multiplicity) for e in payload.edges))


def witness_response(witness: DensityWitness) -> WitnessResponse:
    return WitnessResponse(
        vertices=list(witness.vertices),
        edges_inside=witness.edges_inside,
        value=str(witness.value),
        value_float=float(witness.value),
    )


@contextmanager
def engine_errors() -> Iterator[None]:
    """Translate engine exceptions into HTTP errors (413 for exhaustive limits, else 422)."""

    try:
        yield
    except ExhaustiveLimitError as exc:
        raise HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(exc)) from exc
    except (MulticolorError, ValueError) as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc)) from exc
