"""Schemas for colouring endpoints."""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .common import EdgeRef, MultigraphPayload


class ColorRequest(BaseModel):
    graph: MultigraphPayload
    seed: Optional[int] = Field(None, ge=0, example=0)


class ExactRequest(BaseModel):
    graph: MultigraphPayload
    max_m: Optional[int] = Field(None, ge=0, example=16)


class ColoredEdge(EdgeRef):
    color: int = Field(..., ge=0, example=1)


class ColoringResponse(BaseModel):
    colors_used: int = Field(..., example=6)
    lower_bound: int = Field(..., example=6)
    first_class: bool = True
    strategy: str = Field(..., example="matching_decomposition")
    edges: List[ColoredEdge]
    diagnostics: Dict[str, Any] = Field(default_factory=dict)


class VerifyRequest(BaseModel):
    graph: MultigraphPayload
    edges: List[ColoredEdge]
    k: Optional[int] = Field(None, ge=0, description="palette size; defaults to the largest colour")


class ViolationResponse(BaseModel):
    vertex: int
    color: int
    edges: List[EdgeRef]


class VerifyResponse(BaseModel):
    valid: bool
    colors_used: int
    violations: List[ViolationResponse] = Field(default_factory=list)
    uncolored: List[EdgeRef] = Field(default_factory=list)
