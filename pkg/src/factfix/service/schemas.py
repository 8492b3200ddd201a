"""Request/response models for the HTTP API."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel

from factfix.models import AggregateRow, MetricReport, PipelineConfig, RunManifest


class HealthResponse(BaseModel):
    status: str
    version: str


class MalformedRow(BaseModel):
    line: int
    reason: str


class IngestRequest(BaseModel):
    dataset_path: str
    subset: Optional[str] = None
    include_factual: bool = False
    out_path: Optional[str] = None  # write normalized records here as JSONL


class IngestResponse(BaseModel):
    count: int
    skipped_factual: int
    malformed: list[MalformedRow]
    out_path: Optional[str] = None


class RunRequest(BaseModel):
    dataset_path: str
    config: PipelineConfig
    subset: Optional[str] = None
    include_factual: bool = False
    run_id: Optional[str] = None
    workers: int = 4


class EvaluateRequest(BaseModel):
    dataset_path: str
    subset: Optional[str] = None
    include_factual: bool = False


class EvaluateResponse(BaseModel):
    run_id: str
    aggregate: AggregateRow
    reports: list[MetricReport]


class ReportRequest(BaseModel):
    run_ids: list[str]


class ReportResponse(BaseModel):
    text: str
    tsv: str


class ReplayResponse(BaseModel):
    run_id: str
    record_id: str
    text: str


__all__ = [
    "EvaluateRequest",
    "EvaluateResponse",
    "HealthResponse",
    "IngestRequest",
    "IngestResponse",
    "MalformedRow",
    "ReplayResponse",
    "ReportRequest",
    "ReportResponse",
    "RunManifest",
    "RunRequest",
]
