"""Scores a finished run against gold summaries and writes metric files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from factfix.evaluation.geval import GEVAL_ASPECTS, geval
from factfix.evaluation.metrics import aggregate, ned, semantic_similarity
from factfix.evaluation.nli import get_nli_provider, nli_scores
from factfix.harness.run import load_manifest, load_record_result
from factfix.llm.gateway import LLMGateway, resolve_backend
from factfix.models import (
    AggregateRow,
    GevalTriple,
    MetricReport,
    NliTriple,
    SummaryRecord,
)
from factfix.retrieval.embeddings import get_embedder


def score_record(
    record: SummaryRecord,
    output_text: str,
    embedder,
    nli_provider,
    gateway: LLMGateway,
    judge_backend: str,
) -> MetricReport:
    ent, neu, con = nli_scores(output_text, record.gold_summary, nli_provider)
    scores = {
        aspect: geval(aspect, record.gold_summary, output_text, gateway, judge_backend)
        for aspect in GEVAL_ASPECTS
    }
    return MetricReport(
        record_id=record.id,
        ned=ned(output_text, record.gold_summary),
        sem=semantic_similarity(output_text, record.gold_summary, embedder),
        nli=NliTriple(ent=ent, neu=neu, con=con),
        geval=GevalTriple(
            overall=scores["overall"],
            factuality=scores["factuality"],
            relevance=scores["relevance"],
        ),
    )


def evaluate_run(
    runs_root: str | Path,
    run_id: str,
    records: list[SummaryRecord],
    gateway: Optional[LLMGateway] = None,
) -> tuple[AggregateRow, list[MetricReport]]:
    """Compute per-record metrics for every succeeded record of a run."""
    manifest = load_manifest(runs_root, run_id)
    config = manifest.config
    run_dir = Path(runs_root) / run_id
    metrics_dir = run_dir / "metrics"
    metrics_dir.mkdir(parents=True, exist_ok=True)

    embedder = get_embedder(config.embedder)
    nli_provider = get_nli_provider(config.nli_provider)
    judge_backend = config.judge_backend or config.llm_backend
    if gateway is None:
        gateway = LLMGateway(cache_dir=config.cache_dir)
    if not gateway.is_registered(judge_backend):
        gateway.register(judge_backend, resolve_backend(judge_backend))

    by_id = {r.id: r for r in records}
    reports: list[MetricReport] = []
    for record_id in manifest.succeeded:
        record = by_id.get(record_id)
        if record is None:
            raise KeyError(f"run references unknown record id {record_id!r}")
        result = load_record_result(run_dir, record_id)
        output_text = result["response"]["text"]
        report = score_record(record, output_text, embedder, nli_provider, gateway, judge_backend)
        path = metrics_dir / f"{record_id}.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        tmp.replace(path)
        reports.append(report)

    if not reports:
        raise ValueError(f"run {run_id!r} has no succeeded records to evaluate")
    row = aggregate(
        reports,
        system=config.system,
        evidence_source=config.evidence_source,
        engine=config.engine,
        mode=config.mode,
    )
    (run_dir / "aggregate.json").write_text(row.model_dump_json(indent=2), encoding="utf-8")
    return row, reports


def load_aggregate(runs_root: str | Path, run_id: str) -> AggregateRow:
    path = Path(runs_root) / run_id / "aggregate.json"
    if not path.exists():
        raise FileNotFoundError(f"run {run_id!r} has not been evaluated")
    return AggregateRow.model_validate_json(path.read_text(encoding="utf-8"))
