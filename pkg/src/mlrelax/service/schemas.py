"""Pydantic request and response models for the service and the CLI.

Documents mirror the JSON file formats; exact rationals travel as strings
("3/2") or plain ints.  Semantic validation (ranges, multilinearity,
digraph invariants) happens in the core parsers, not here.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field


class TermModel(BaseModel):
    coef: int | str
    vars: list[int]


class ConstraintModel(BaseModel):
    terms: list[TermModel]
    rhs: int | str
    sense: Literal["<="] = "<="


class InstanceModel(BaseModel):
    format: Literal[1] = 1
    num_vars: int
    objective: list[TermModel] = Field(default_factory=list)
    constraints: list[ConstraintModel] = Field(default_factory=list)


class LinearizationModel(BaseModel):
    format: Literal[1] = 1
    num_vars: int | None = None
    nodes: list[list[int]]
    arcs: list[list[int]] = Field(default_factory=list)


class PointEntryModel(BaseModel):
    vars: list[int]
    value: int | str


class PointModel(BaseModel):
    format: Literal[1] = 1
    entries: list[PointEntryModel]


class FlowerModel(BaseModel):
    format: Literal[1] = 1
    center: list[int]
    neighbors: list[list[int]]


class BoundRequest(BaseModel):
    instance: InstanceModel
    relaxation: Literal[
        "standard", "flower", "cutting-plane", "dynamic", "linearizations"
    ] = "standard"
    max_neighbors: int | None = None
    max_iters: int = 200
    linearizations: list[LinearizationModel] = Field(default_factory=list)
    with_integer_opt: bool = False


class BoundReportModel(BaseModel):
    method: str
    status: Literal["optimal", "infeasible"]
    bound: str | None = None
    integer_opt: str | None = None
    rows_generated: int = 0
    iterations: int = 0


CheckName = Literal["lemma-projection", "lemma-path", "theorem", "fig3"]


class CheckRequest(BaseModel):
    check: CheckName
    instance: InstanceModel | None = None
    linearization: LinearizationModel | None = None
    extra_linearizations: list[LinearizationModel] = Field(default_factory=list)
    edge: list[int] | None = None  # lemma-projection: only this removed edge
    seed: int = 0
    samples: int = 20
    extras_per_instance: int = 5
    max_vars: int = 5
    max_edges: int = 4


class CheckReportModel(BaseModel):
    name: str
    holds: bool
    counterexample: dict[str, Any] | None = None
    stats: dict[str, int | str] = Field(default_factory=dict)


class ConstructRequest(BaseModel):
    instance: InstanceModel
    center: list[int]
    neighbors: list[list[int]]
    dot: bool = False


class ConstructResponse(BaseModel):
    status: Literal["ok", "redundant-flower"]
    linearization: LinearizationModel | None = None
    dot: str | None = None
    diagnosis: str | None = None


class FlowerInfoModel(BaseModel):
    center: list[int]
    neighbors: list[list[int]]
    kind: Literal["flower", "extended"]
    row: str


class FlowerCountsModel(BaseModel):
    total: int
    with_edge_neighbor: int
    all_singleton: int


class FlowersRequest(BaseModel):
    instance: InstanceModel
    max_neighbors: int | None = None
    count_only: bool = False


class FlowersResponse(BaseModel):
    counts: FlowerCountsModel
    flowers: list[FlowerInfoModel] | None = None


class SeparateRequest(BaseModel):
    instance: InstanceModel
    point: PointModel
    max_neighbors: int | None = None


class SeparateResponse(BaseModel):
    status: Literal["none", "violated"]
    flower: FlowerModel | None = None
    violation: str | None = None


class FixtureInfoModel(BaseModel):
    name: str
    kind: str


class FixtureDocModel(BaseModel):
    name: str
    kind: str
    document: dict[str, Any]
