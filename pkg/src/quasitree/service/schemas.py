"""Request and response bodies for the HTTP endpoints."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

Vertex = Union[int, str]


class HyperedgeModel(BaseModel):
    id: str
    verts: list[Vertex]


class HypergraphModel(BaseModel):
    vertices: list[Vertex]
    hyperedges: list[HyperedgeModel]


class EdgeModel(BaseModel):
    id: str
    ends: list[Vertex]


class MultigraphModel(BaseModel):
    vertices: list[Vertex]
    edges: list[EdgeModel]


class QuasigraphModel(BaseModel):
    # the hypergraph may be omitted when the request names one elsewhere
    hypergraph: Optional[HypergraphModel] = None
    rep: dict[str, Optional[list[Vertex]]]


class CheckRequest(BaseModel):
    hypergraph: HypergraphModel
    quasigraph: QuasigraphModel


class FindQuasitreeRequest(BaseModel):
    hypergraph: HypergraphModel
    max_iterations: Optional[int] = Field(default=None, ge=1)
    trace: bool = False


class HamiltonRequest(BaseModel):
    multigraph: MultigraphModel
    # two edge ids switch from a cycle to a path between them
    path: Optional[list[str]] = Field(default=None, min_length=2, max_length=2)


class HamiltonPathRequest(BaseModel):
    multigraph: MultigraphModel
    e1: str
    e2: str


class GenRequest(BaseModel):
    kind: Literal["hypergraph", "graph"]
    n: int = Field(ge=1)
    constraints: str = "none"
    seed: int = 0
    count: int = Field(default=1, ge=1, le=10000)
    max_edges: int = Field(default=12, ge=1)
    attempts: int = Field(default=20000, ge=1)


class OracleRequest(BaseModel):
    kind: Literal["tight-quasitrees", "hamilton"]
    hypergraph: Optional[HypergraphModel] = None
    multigraph: Optional[MultigraphModel] = None
    limit: Optional[int] = Field(default=None, ge=1)
    mode: Literal["cycle", "path"] = "cycle"
    ends: Optional[list[str]] = Field(default=None, min_length=2, max_length=2)


class Envelope(BaseModel):
    """Uniform reply: computation failures ride in the body, not HTTP codes."""

    status: Literal["ok", "rejected", "verification-failure", "error"]
    stage: Optional[str] = None
    reason: Optional[str] = None
    result: Optional[Any] = None
    trace: Optional[list[dict]] = None
