"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class AnalyzeRequest(BaseModel):
    """Analyze raw text (proxied to the model adapter) or an inlined
    schema-v1 attention record; exactly one of the two must be given."""

    text: str | None = None
    record: dict | None = None
    language: str = "en"
    threshold: float = Field(default=0.6, ge=0.0, le=1.0)
    mode: Literal["relative", "absolute"] = "relative"
    expand_modifiers: bool = True
    palette: Literal["red", "colorblind"] = "red"


class ClassifierVerdict(BaseModel):
    label: str
    score: float


class RoleSpans(BaseModel):
    target: list[tuple[int, int]]
    argument: list[tuple[int, int]]


class PhaseTimings(BaseModel):
    span_prediction: float
    attention_map: float
    role_visuals: float
    total: float


class AnalyzeResponse(BaseModel):
    schema_version: int
    record_id: str
    classifier: ClassifierVerdict
    word_scores: list[tuple[int, float]]
    selected_words: list[int]
    char_spans: list[tuple[int, int]]
    roles: RoleSpans | None
    heatmap_html: str
    roles_html: str
    elapsed: PhaseTimings


class HealthResponse(BaseModel):
    status: str
    schema_version: int


class ErrorBody(BaseModel):
    error: str
    detail: str | None = None
