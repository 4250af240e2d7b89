"""Schemas for density and lower-bound endpoints."""
from typing import List

from pydantic import BaseModel, Field

from .common import MultigraphPayload, WitnessResponse


class RhoRequest(BaseModel):
    graph: MultigraphPayload
    method: str = Field("exact", regex="^(exact|fast)$", example="exact")


class RhoResponse(BaseModel):
    method: str
    witness: WitnessResponse


class LowerBoundResponse(BaseModel):
    k: int = Field(..., example=6)
    delta: int = Field(..., example=4)
    active: str = Field(..., example="density")
    exact: bool = True
    degrees: List[int] = Field(..., example=[4, 4, 4])
    mu_max: int = Field(..., example=2)
    mu_min: int = Field(..., example=2)
    witness: WitnessResponse
