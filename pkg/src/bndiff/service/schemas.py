"""Pydantic request/response models for the session API."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, RootModel


class LearnOptions(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    max_indegree: int = Field(default=2, alias="maxIndegree", ge=1)
    alpha: float = Field(default=1.0, gt=0)
    sample_n: int | None = Field(default=None, alias="sampleN", ge=1)
    seed: int = 0
    max_passes: int = Field(default=1000, alias="maxPasses", ge=1)


class CreateSessionRequest(BaseModel):
    """Either a ready network document, or a CSV dataset to learn from."""

    network: dict | None = None
    dataset: str | None = None
    learn: LearnOptions | None = None


class CreateSessionResponse(BaseModel):
    id: str
    variables: list[str]


class EvidenceBody(RootModel[dict[str, str]]):
    """Full evidence mapping {variable name: value}; omitted means '?'."""


class ThresholdBody(BaseModel):
    percent: float


class RankedVariable(BaseModel):
    name: str
    relevance: float


class SessionSummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    e1: dict[str, str]
    e2: dict[str, str]
    threshold: float
    eligible_count: int = Field(alias="eligibleCount")
    retained: list[str]
    ranking: list[RankedVariable]
