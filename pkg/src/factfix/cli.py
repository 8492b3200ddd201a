"""Thin command-line client for the HTTP service.

Every subcommand is a request to the API. By default the app runs
in-process (no server needed); ``--server URL`` targets a remote
instance started with ``factfix serve``.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import httpx

from factfix.models import PipelineConfig


def _client(server: Optional[str], runs_root: str) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # ASGITransport is async-only here, so drive the in-process app with
    # the synchronous ASGI test client instead.
    from starlette.testclient import TestClient

    from factfix.service.app import create_app

    return TestClient(create_app(runs_root=runs_root), raise_server_exceptions=False)


def _check(response: httpx.Response) -> dict:
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except Exception:
            detail = response.text
        click.echo(f"error ({response.status_code}): {detail}", err=True)
        sys.exit(1)
    return response.json()


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default runs in-process.")
@click.option("--runs-root", default="runs", show_default=True, help="Runs directory (in-process mode).")
@click.pass_context
def main(ctx, server, runs_root):
    ctx.obj = {"server": server, "runs_root": runs_root}


@main.command()
@click.argument("dataset_path")
@click.option("--subset", default=None, help="Keep only rows with this domain tag.")
@click.option("--include-factual", is_flag=True, help="Also keep rows labeled factual.")
@click.option("--out", "out_path", default=None, help="Write normalized records to this JSONL file.")
@click.pass_context
def ingest(ctx, dataset_path, subset, include_factual, out_path):
    """Load a SummEdits-style dataset and report counts."""
    with _client(ctx.obj["server"], ctx.obj["runs_root"]) as client:
        data = _check(
            client.post(
                "/ingest",
                json={
                    "dataset_path": dataset_path,
                    "subset": subset,
                    "include_factual": include_factual,
                    "out_path": out_path,
                },
            )
        )
    click.echo(f"records: {data['count']}  skipped factual: {data['skipped_factual']}")
    for row in data["malformed"]:
        click.echo(f"malformed line {row['line']}: {row['reason']}", err=True)


def _config_options(fn):
    options = [
        click.option("--system", type=click.Choice(["cove", "rarr"]), required=True),
        click.option("--backend", "llm_backend", required=True, help="Backend spec, e.g. rules:path or openai:gpt-4o-mini."),
        click.option("--source", "evidence_source", type=click.Choice(["internal", "gold_article", "search"]), default="internal", show_default=True),
        click.option("--engine", type=click.Choice(["google", "bing", "ddg"]), default=None),
        click.option("--mode", type=click.Choice(["snippets", "full_article"]), default=None),
        click.option("--max-questions", default=5, show_default=True),
        click.option("--top-n", default=5, show_default=True),
        click.option("--judge-backend", default=None, help="Judge backend for evaluation; defaults to --backend."),
        click.option("--embedder", default="hash:64", show_default=True),
        click.option("--nli", "nli_provider", default="lexical", show_default=True),
        click.option("--search-fixtures", "search_fixtures_dir", default=None, help="Directory of recorded search fixtures."),
        click.option("--cache-dir", default=None, help="Completion cache directory."),
        click.option("--config-file", default=None, help="JSON file with PipelineConfig fields; flags override it."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _build_config(config_file, **flags) -> dict:
    base = {}
    if config_file:
        base = json.loads(open(config_file, encoding="utf-8").read())
    base.update({k: v for k, v in flags.items() if v is not None})
    return PipelineConfig.model_validate(base).model_dump()


@main.command()
@click.argument("dataset_path")
@click.option("--subset", default=None)
@click.option("--include-factual", is_flag=True)
@click.option("--run-id", default=None)
@click.option("--workers", default=4, show_default=True)
@_config_options
@click.pass_context
def run(ctx, dataset_path, subset, include_factual, run_id, workers, config_file, **flags):
    """Run the correction pipeline over a dataset."""
    config = _build_config(config_file, **flags)
    with _client(ctx.obj["server"], ctx.obj["runs_root"]) as client:
        data = _check(
            client.post(
                "/runs",
                json={
                    "dataset_path": dataset_path,
                    "subset": subset,
                    "include_factual": include_factual,
                    "run_id": run_id,
                    "workers": workers,
                    "config": config,
                },
            )
        )
    click.echo(f"run {data['run_id']}: {len(data['succeeded'])} succeeded, {len(data['failed'])} failed")
    if data["failed"]:
        click.echo("failed: " + ", ".join(data["failed"]), err=True)
        sys.exit(2)


@main.command()
@click.argument("run_id")
@click.argument("dataset_path")
@click.option("--subset", default=None)
@click.option("--include-factual", is_flag=True)
@click.pass_context
def evaluate(ctx, run_id, dataset_path, subset, include_factual):
    """Score a finished run against gold summaries."""
    with _client(ctx.obj["server"], ctx.obj["runs_root"]) as client:
        data = _check(
            client.post(
                f"/runs/{run_id}/evaluate",
                json={
                    "dataset_path": dataset_path,
                    "subset": subset,
                    "include_factual": include_factual,
                },
            )
        )
    row = data["aggregate"]
    click.echo(json.dumps(row, indent=2))


@main.command()
@click.argument("run_ids", nargs=-1, required=True)
@click.option("--tsv", "as_tsv", is_flag=True, help="Emit tab-separated raw means instead of the table.")
@click.pass_context
def report(ctx, run_ids, as_tsv):
    """Render the comparison table for one or more evaluated runs."""
    with _client(ctx.obj["server"], ctx.obj["runs_root"]) as client:
        data = _check(client.post("/report", json={"run_ids": list(run_ids)}))
    click.echo(data["tsv"] if as_tsv else data["text"])


@main.command()
@click.argument("run_id")
@click.argument("record_id")
@click.pass_context
def replay(ctx, run_id, record_id):
    """Re-render the stored trace of one record."""
    with _client(ctx.obj["server"], ctx.obj["runs_root"]) as client:
        data = _check(client.get(f"/runs/{run_id}/records/{record_id}/replay"))
    click.echo(data["text"])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.pass_context
def serve(ctx, host, port):
    """Start the HTTP service."""
    import uvicorn

    from factfix.service.app import create_app

    uvicorn.run(create_app(runs_root=ctx.obj["runs_root"]), host=host, port=port)


if __name__ == "__main__":
    main()
