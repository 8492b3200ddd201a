"""FastAPI service wrapping the correction pipeline and evaluation harness.

The service is stateless apart from the runs directory: every endpoint
resolves its dependencies from the request's pipeline config, so scripted
rule-file backends and live API backends go through the same path.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, HTTPException

import factfix
from factfix.harness.evaluate import evaluate_run, load_aggregate
from factfix.harness.ingest import load_summedits
from factfix.harness.run import load_manifest, load_record_result, run_batch
from factfix.models import RefinedResponse, RunManifest, SummaryRecord
from factfix.serialization import file_digest, write_jsonl
from factfix.service import schemas


def _render_trace(response: RefinedResponse) -> str:
    lines = [f"system: {response.system}", f"final: {response.text}", ""]
    for i, trace in enumerate(response.trace, start=1):
        lines.append(f"--- stage {i}: {trace.stage}" + (f" ({trace.note})" if trace.note else ""))
        if trace.prompt:
            lines.append("prompt:")
            lines.append(trace.prompt)
        if trace.raw_output:
            lines.append("raw output:")
            lines.append(trace.raw_output)
        if trace.parsed is not None:
            lines.append(f"parsed: {trace.parsed}")
        lines.append("")
    return "\n".join(lines)


def create_app(runs_root: str | Path | None = None) -> FastAPI:
    runs_root = Path(runs_root or os.environ.get("FACTFIX_RUNS_ROOT", "runs"))
    app = FastAPI(title="factfix", version=factfix.__version__)

    def _load_records(dataset_path: str, subset, include_factual) -> list[SummaryRecord]:
        if not Path(dataset_path).exists():
            raise HTTPException(status_code=404, detail=f"dataset not found: {dataset_path}")
        result = load_summedits(dataset_path, subset_filter=subset, include_factual=include_factual)
        if not result.records:
            raise HTTPException(status_code=422, detail="dataset yielded no records")
        return result.records

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=factfix.__version__)

    @app.post("/ingest", response_model=schemas.IngestResponse)
    def ingest(request: schemas.IngestRequest) -> schemas.IngestResponse:
        if not Path(request.dataset_path).exists():
            raise HTTPException(status_code=404, detail=f"dataset not found: {request.dataset_path}")
        result = load_summedits(
            request.dataset_path,
            subset_filter=request.subset,
            include_factual=request.include_factual,
        )
        out_path = None
        if request.out_path:
            write_jsonl(request.out_path, result.records)
            out_path = request.out_path
        return schemas.IngestResponse(
            count=len(result.records),
            skipped_factual=result.skipped_factual,
            malformed=[schemas.MalformedRow(line=l, reason=r) for l, r in result.malformed],
            out_path=out_path,
        )

    @app.post("/runs", response_model=RunManifest)
    def start_run(request: schemas.RunRequest) -> RunManifest:
        records = _load_records(request.dataset_path, request.subset, request.include_factual)
        return run_batch(
            records,
            request.config,
            runs_root,
            run_id=request.run_id,
            worker_bound=request.workers,
            dataset_digest=file_digest(request.dataset_path),
        )

    @app.get("/runs/{run_id}", response_model=RunManifest)
    def get_run(run_id: str) -> RunManifest:
        try:
            return load_manifest(runs_root, run_id)
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.post("/runs/{run_id}/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate(run_id: str, request: schemas.EvaluateRequest) -> schemas.EvaluateResponse:
        records = _load_records(request.dataset_path, request.subset, request.include_factual)
        try:
            row, reports = evaluate_run(runs_root, run_id, records)
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return schemas.EvaluateResponse(run_id=run_id, aggregate=row, reports=reports)

    @app.post("/report", response_model=schemas.ReportResponse)
    def report(request: schemas.ReportRequest) -> schemas.ReportResponse:
        from factfix.harness.report import render_report, render_tsv

        rows = []
        for run_id in request.run_ids:
            try:
                rows.append(load_aggregate(runs_root, run_id))
            except FileNotFoundError as exc:
                raise HTTPException(status_code=404, detail=str(exc))
        if not rows:
            raise HTTPException(status_code=422, detail="no run ids given")
        return schemas.ReportResponse(text=render_report(rows), tsv=render_tsv(rows))

    @app.get("/runs/{run_id}/records/{record_id}/replay", response_model=schemas.ReplayResponse)
    def replay(run_id: str, record_id: str) -> schemas.ReplayResponse:
        try:
            result = load_record_result(runs_root / run_id, record_id)
        except FileNotFoundError:
            raise HTTPException(status_code=404, detail=f"no result for record {record_id!r}")
        if result.get("status") != "ok":
            raise HTTPException(
                status_code=422, detail=f"record {record_id!r} failed: {result.get('error')}"
            )
        response = RefinedResponse.model_validate(result["response"])
        return schemas.ReplayResponse(run_id=run_id, record_id=record_id, text=_render_trace(response))

    return app
