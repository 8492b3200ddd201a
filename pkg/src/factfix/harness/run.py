"""Batch orchestration: run every record through the pipeline, resumably.

Output tree: ``<runs_root>/<run_id>/{manifest.json, records/, metrics/,
report.txt}``. One JSON file per record, written atomically, so a rerun
with the same run id skips records that already succeeded. The run id
defaults to a digest of the config and dataset so different settings can
never land in one directory.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

from factfix.llm.gateway import LLMGateway, resolve_backend
from factfix.models import PipelineConfig, RefinedResponse, RunManifest, SummaryRecord
from factfix.pipeline.runner import PipelineDeps, run_pipeline
from factfix.retrieval.embeddings import get_embedder
from factfix.retrieval.engines import SearchService


def build_deps(config: PipelineConfig, gateway: Optional[LLMGateway] = None) -> PipelineDeps:
    """Resolve a config into live pipeline dependencies.

    A caller-provided gateway (with backends already registered) wins;
    otherwise backends are resolved from the config's spec strings.
    """
    if gateway is None:
        gateway = LLMGateway(cache_dir=config.cache_dir)
    for backend_id in {config.llm_backend, config.judge_backend or config.llm_backend}:
        if not gateway.is_registered(backend_id):
            gateway.register(backend_id, resolve_backend(backend_id))
    search_service = None
    embedder = None
    if config.evidence_source == "search":
        search_service = SearchService(fixtures_dir=config.search_fixtures_dir)
        if config.mode == "full_article":
            embedder = get_embedder(config.embedder)
    return PipelineDeps(gateway=gateway, search_service=search_service, embedder=embedder)


def config_digest(config: PipelineConfig, dataset_digest: str) -> str:
    payload = config.model_dump_json() + dataset_digest
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def _record_path(run_dir: Path, record_id: str) -> Path:
    return run_dir / "records" / f"{record_id}.json"


def load_record_result(run_dir: str | Path, record_id: str) -> dict:
    path = _record_path(Path(run_dir), record_id)
    return json.loads(path.read_text(encoding="utf-8"))


def run_batch(
    records: list[SummaryRecord],
    config: PipelineConfig,
    runs_root: str | Path,
    run_id: Optional[str] = None,
    worker_bound: int = 4,
    deps: Optional[PipelineDeps] = None,
    dataset_digest: str = "",
) -> RunManifest:
    if deps is None:
        deps = build_deps(config)
    run_id = run_id or config_digest(config, dataset_digest)
    run_dir = Path(runs_root) / run_id
    (run_dir / "records").mkdir(parents=True, exist_ok=True)
    started = time.monotonic()

    def process(record: SummaryRecord) -> tuple[str, bool]:
        path = _record_path(run_dir, record.id)
        if path.exists():
            existing = json.loads(path.read_text(encoding="utf-8"))
            if existing.get("status") == "ok":
                return record.id, True
        try:
            response = run_pipeline(record, config, deps)
            payload = {
                "status": "ok",
                "record_id": record.id,
                "response": json.loads(response.model_dump_json()),
            }
            ok = True
        except Exception as exc:
            payload = {"status": "failed", "record_id": record.id, "error": str(exc)}
            ok = False
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
        tmp.replace(path)
        return record.id, ok

    succeeded: list[str] = []
    failed: list[str] = []
    if worker_bound <= 1:
        outcomes = [process(r) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=worker_bound) as pool:
            outcomes = list(pool.map(process, records))
    for record_id, ok in outcomes:
        (succeeded if ok else failed).append(record_id)

    manifest = RunManifest(
        run_id=run_id,
        config=config,
        dataset_digest=dataset_digest,
        record_count=len(records),
        succeeded=succeeded,
        failed=failed,
        total_seconds=round(time.monotonic() - started, 3),
    )
    manifest_path = run_dir / "manifest.json"
    manifest_path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    return manifest


def load_manifest(runs_root: str | Path, run_id: str) -> RunManifest:
    path = Path(runs_root) / run_id / "manifest.json"
    if not path.exists():
        raise FileNotFoundError(f"no manifest for run {run_id!r} under {runs_root}")
    return RunManifest.model_validate_json(path.read_text(encoding="utf-8"))
