"""Schemas for sampling and prediction endpoints."""
from typing import List

from pydantic import BaseModel, Field

from .common import EdgeSpec


class SampleRequest(BaseModel):
    n: int = Field(..., ge=0, le=2000, example=9)
    m: int = Field(..., ge=0, le=5_000_000, example=800)
    seed: int = Field(0, ge=0, example=42)
    model: str = Field("iid-pairs", regex="^(iid-pairs|poisson)$")


class SampleResponse(BaseModel):
    n: int
    m: int
    seed: int
    model: str
    edges: List[EdgeSpec]


class PredictionResponse(BaseModel):
    n: int = Field(..., example=9)
    m: int = Field(..., example=3300)
    epsilon: float = Field(..., example=0.3)
    d_plus: float
    rho_full: str = Field(..., example="825")
    threshold: float = Field(..., example=1601.9)
    regime: str = Field(..., example="super-threshold")
    d0: int
    d0_95: int
    mu_bound: float
