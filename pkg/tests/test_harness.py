import json
from pathlib import Path

import pytest

from factfix.harness.evaluate import evaluate_run
from factfix.harness.ingest import load_summedits
from factfix.harness.report import best_flags, render_report, render_tsv
from factfix.harness.run import build_deps, load_manifest, run_batch
from factfix.models import AggregateRow, GevalTriple, NliTriple, PipelineConfig
from tests.golden_fixture import build_golden


# --- ingestion ------------------------------------------------------------


def _write_rows(path, rows):
    with open(path, "w", encoding="utf-8") as fp:
        for row in rows:
            fp.write((row if isinstance(row, str) else json.dumps(row)) + "\n")


def test_ingest_three_rows(tmp_path):
    path = tmp_path / "d.jsonl"
    _write_rows(
        path,
        [
            {"id": f"r{i}", "domain": "news", "label": 0, "seed_summary": "g", "summary": "h"}
            for i in range(3)
        ],
    )
    result = load_summedits(path)
    assert len(result.records) == 3
    assert result.malformed == []


def test_ingest_skips_factual_by_default(tmp_path):
    path = tmp_path / "d.jsonl"
    _write_rows(
        path,
        [
            {"id": "a", "label": 0, "seed_summary": "g", "summary": "h"},
            {"id": "b", "label": 1, "seed_summary": "g", "summary": "h"},
        ],
    )
    result = load_summedits(path)
    assert [r.id for r in result.records] == ["a"]
    assert result.skipped_factual == 1
    everything = load_summedits(path, include_factual=True)
    assert len(everything.records) == 2


def test_ingest_subset_filter(tmp_path):
    path = tmp_path / "d.jsonl"
    _write_rows(
        path,
        [
            {"id": "a", "domain": "news", "label": 0, "seed_summary": "g", "summary": "h"},
            {"id": "b", "domain": "legal", "label": 0, "seed_summary": "g", "summary": "h"},
        ],
    )
    result = load_summedits(path, subset_filter="news")
    assert [r.id for r in result.records] == ["a"]


def test_ingest_collects_malformed_rows(tmp_path):
    path = tmp_path / "d.jsonl"
    _write_rows(
        path,
        [
            {"id": "good", "label": 0, "seed_summary": "g", "summary": "h"},
            {"id": "nogold", "label": 0, "summary": "h"},
            "not json at all {",
            {"id": "good", "label": 0, "seed_summary": "g", "summary": "dup id"},
        ],
    )
    result = load_summedits(path)
    assert [r.id for r in result.records] == ["good"]
    reasons = [reason for _line, reason in result.malformed]
    assert any("gold" in r for r in reasons)
    assert any("JSON" in r for r in reasons)
    assert any("duplicate" in r for r in reasons)
    assert [line for line, _ in result.malformed] == [2, 3, 4]


def test_ingest_maps_fields(tmp_path):
    path = tmp_path / "d.jsonl"
    _write_rows(
        path,
        [{"id": "a", "label": 0, "seed_summary": "gold", "summary": "bad", "doc": "article"}],
    )
    record = load_summedits(path).records[0]
    assert record.gold_summary == "gold"
    assert record.input_summary == "bad"
    assert record.source_article == "article"


# --- batch runs -----------------------------------------------------------


@pytest.fixture
def golden(tmp_path):
    return build_golden(tmp_path / "golden")


def _load_records(golden):
    return load_summedits(golden["dataset"]).records


def test_run_batch_all_succeed(tmp_path, golden):
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    manifest = run_batch(records, config, tmp_path / "runs", run_id="t1", worker_bound=2)
    assert sorted(manifest.succeeded) == ["e1", "e2", "e3"]
    assert manifest.failed == []
    for rid, expected in golden["expected_outputs"].items():
        payload = json.loads((tmp_path / "runs/t1/records" / f"{rid}.json").read_text())
        assert payload["response"]["text"] == expected


def test_run_batch_resume_skips_succeeded(tmp_path, golden):
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    run_batch(records, config, tmp_path / "runs", run_id="t1")
    # corrupt one record result to prove the others are not recomputed
    target = tmp_path / "runs/t1/records/e2.json"
    target.unlink()
    before = (tmp_path / "runs/t1/records/e1.json").read_bytes()
    manifest = run_batch(records, config, tmp_path / "runs", run_id="t1")
    assert sorted(manifest.succeeded) == ["e1", "e2", "e3"]
    assert (tmp_path / "runs/t1/records/e1.json").read_bytes() == before
    assert target.exists()


def test_run_batch_records_failures(tmp_path, golden):
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    deps = build_deps(config)
    original = deps.gateway.complete

    def sabotage(request):
        if "thriving company Ozy Media" in request.prompt:
            raise RuntimeError("injected failure")
        return original(request)

    deps.gateway.complete = sabotage
    manifest = run_batch(records, config, tmp_path / "runs", run_id="t2", deps=deps, worker_bound=1)
    assert sorted(manifest.succeeded) == ["e1", "e3"]
    assert manifest.failed == ["e2"]
    payload = json.loads((tmp_path / "runs/t2/records/e2.json").read_text())
    assert payload["status"] == "failed"
    assert "injected" in payload["error"]


def test_manifest_roundtrip(tmp_path, golden):
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    manifest = run_batch(records, config, tmp_path / "runs", run_id="t3")
    loaded = load_manifest(tmp_path / "runs", "t3")
    assert loaded.run_id == manifest.run_id
    assert loaded.succeeded == manifest.succeeded
    assert loaded.record_count == 3


# --- evaluation of runs ---------------------------------------------------


def test_evaluate_run_produces_metrics(tmp_path, golden):
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    run_batch(records, config, tmp_path / "runs", run_id="t4")
    row, reports = evaluate_run(tmp_path / "runs", "t4", records)
    assert row.n == 3
    assert len(reports) == 3
    assert (tmp_path / "runs/t4/aggregate.json").exists()
    # judge rules: factuality 8, relevance 9, overall 7 on the 1-10 scale
    assert row.geval.factuality == pytest.approx(7 / 9)
    assert row.geval.relevance == pytest.approx(8 / 9)
    assert row.geval.overall == pytest.approx(6 / 9)


def test_evaluate_perfect_output_ned_zero(tmp_path, golden):
    # e1's fix equals the gold summary, so its report has ned 0 and sem 1
    records = _load_records(golden)
    config = PipelineConfig.model_validate(golden["config"])
    run_batch(records, config, tmp_path / "runs", run_id="t5")
    _row, reports = evaluate_run(tmp_path / "runs", "t5", records)
    by_id = {r.record_id: r for r in reports}
    assert by_id["e1"].ned == 0.0
    assert by_id["e1"].sem == pytest.approx(1.0, abs=1e-6)


def test_evaluate_missing_run(tmp_path, golden):
    with pytest.raises(FileNotFoundError):
        evaluate_run(tmp_path / "runs", "nope", _load_records(golden))


# --- report rendering -----------------------------------------------------


def _row(system, ned, sem, ent, neu, con, overall=0.6, fact=0.5, rel=0.7, **kwargs):
    return AggregateRow(
        system=system,
        evidence_source=kwargs.get("evidence_source", "search"),
        engine=kwargs.get("engine"),
        mode=kwargs.get("mode"),
        n=kwargs.get("n", 10),
        ned=ned,
        sem=sem,
        nli=NliTriple(ent=ent, neu=neu, con=con),
        geval=GevalTriple(overall=overall, factuality=fact, relevance=rel),
    )


def test_best_marking_directions():
    low = _row("rarr", ned=0.14, sem=0.95, ent=0.49, neu=0.16, con=0.35, overall=0.69, fact=0.60, rel=0.73)
    high = _row("cove", ned=0.51, sem=0.81, ent=0.30, neu=0.28, con=0.42, overall=0.50, fact=0.45, rel=0.49)
    flags = best_flags([low, high])
    # row 0 wins every directed column: lower NED and Con., higher rest
    assert flags[0] == [True, True, True, False, True, True, True, True]
    assert flags[1] == [False] * 8


def test_best_marking_tie_marks_both():
    a = _row("rarr", ned=0.2, sem=0.9, ent=0.4, neu=0.3, con=0.3)
    b = _row("cove", ned=0.2, sem=0.8, ent=0.5, neu=0.2, con=0.3)
    flags = best_flags([a, b])
    assert flags[0][0] and flags[1][0]  # NED tie
    assert flags[0][4] and flags[1][4]  # Con. tie


def test_single_run_marked_best_everywhere():
    flags = best_flags([_row("rarr", ned=0.2, sem=0.9, ent=0.4, neu=0.3, con=0.3)])
    assert flags[0] == [True, True, True, False, True, True, True, True]


def test_render_report_marks_and_formats():
    low = _row("rarr", ned=0.14, sem=0.949, ent=0.49, neu=0.16, con=0.35, engine="bing", mode="snippets")
    high = _row("cove", ned=0.51, sem=0.81, ent=0.30, neu=0.28, con=0.42, engine="bing", mode="snippets")
    text = render_report([low, high])
    assert "0.14*" in text
    assert "95*" in text  # 0.949 rendered as rounded percent
    assert "rarr / bing (snip.)" in text
    assert "NED" in text and "Relev." in text


def test_render_tsv_keeps_raw_means():
    row = _row("cove", ned=0.512345, sem=0.81, ent=0.3, neu=0.28, con=0.42, evidence_source="internal")
    tsv = render_tsv([row])
    assert "0.512345" in tsv
    assert "\t" in tsv


def test_render_report_empty_rejected():
    with pytest.raises(ValueError):
        render_report([])
