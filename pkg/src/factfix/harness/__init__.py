from factfix.harness.ingest import IngestResult, load_summedits
from factfix.harness.run import build_deps, run_batch
from factfix.harness.evaluate import evaluate_run
from factfix.harness.report import render_report, render_tsv

__all__ = [
    "IngestResult",
    "build_deps",
    "evaluate_run",
    "load_summedits",
    "render_report",
    "render_tsv",
    "run_batch",
]
