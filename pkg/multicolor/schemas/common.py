"""Shared Pydantic schemas."""
from typing import List

from pydantic import BaseModel, Field, validator


class EdgeSpec(BaseModel):
    u: int = Field(..., ge=0, example=0)
    v: int = Field(..., ge=0, example=1)
    multiplicity: int = Field(1, ge=0, example=2)


class MultigraphPayload(BaseModel):
    n: int = Field(..., ge=0, example=3)
    edges: List[EdgeSpec] = Field(
        default_factory=list,
        example=[{"u": 0, "v": 1, "multiplicity": 2}, {"u": 1, "v": 2, "multiplicity": 2}, {"u": 0, "v": 2, "multiplicity": 2}],
    )

    @validator("edges", each_item=True)
    def reject_loops(cls, v):
        if v.u == v.v:
            raise ValueError(f"loop at vertex {v.u}")
        return v


class EdgeRef(BaseModel):
    u: int = Field(..., example=0)
    v: int = Field(..., example=1)
    copy_index: int = Field(..., ge=0, example=0)


class WitnessResponse(BaseModel):
    vertices: List[int] = Field(..., example=[0, 1, 2])
    edges_inside: int = Field(..., example=6)
    value: str = Field(..., example="6", description="exact rational e(S)/floor(|S|/2)")
    value_float: float = Field(..., example=6.0)
