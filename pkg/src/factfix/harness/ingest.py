"""Ingestion of SummEdits-style JSONL datasets into SummaryRecords.

Rows carry a gold (seed) summary, an edited summary, the source document
and a consistency label. Key names vary slightly across dataset dumps, so
a tolerant alias map is used. By default only rows labeled inconsistent
(the hallucinated ones) are kept; ``include_factual`` keeps everything.
Malformed rows are collected with their line numbers, never fatal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from factfix.models import SummaryRecord

_GOLD_KEYS = ("seed_summary", "gold_summary", "reference_summary", "original_summary")
_INPUT_KEYS = ("summary", "edited_summary", "input_summary")
_ARTICLE_KEYS = ("doc", "article", "document", "source_article")
_DOMAIN_KEYS = ("domain", "domain_tag")
_ID_KEYS = ("id", "sample_id", "example_id")


@dataclass
class IngestResult:
    records: list[SummaryRecord] = field(default_factory=list)
    malformed: list[tuple[int, str]] = field(default_factory=list)  # (line number, reason)
    skipped_factual: int = 0


def _first(row: dict, keys: tuple[str, ...]) -> Optional[str]:
    for key in keys:
        value = row.get(key)
        if value is not None and value != "":
            return value
    return None


def _is_factual(row: dict) -> Optional[bool]:
    label = row.get("label", row.get("agreement"))
    if label is None:
        return None
    if isinstance(label, (int, float)):
        return bool(label)
    return str(label).lower() in ("1", "true", "consistent", "factual")


def load_summedits(
    path: str | Path,
    subset_filter: Optional[str] = None,
    include_factual: bool = False,
) -> IngestResult:
    result = IngestResult()
    seen_ids: set[str] = set()
    with Path(path).open("r", encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                result.malformed.append((lineno, f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(row, dict):
                result.malformed.append((lineno, "row is not an object"))
                continue

            domain = str(_first(row, _DOMAIN_KEYS) or "news")
            if subset_filter and domain != subset_filter:
                continue
            if not include_factual and _is_factual(row) is True:
                result.skipped_factual += 1
                continue

            gold = _first(row, _GOLD_KEYS)
            inp = _first(row, _INPUT_KEYS)
            if not gold:
                result.malformed.append((lineno, "missing gold summary"))
                continue
            if not inp:
                result.malformed.append((lineno, "missing input summary"))
                continue
            record_id = str(_first(row, _ID_KEYS) or f"row{lineno}")
            if record_id in seen_ids:
                result.malformed.append((lineno, f"duplicate id {record_id!r}"))
                continue
            seen_ids.add(record_id)
            result.records.append(
                SummaryRecord(
                    id=record_id,
                    gold_summary=str(gold),
                    input_summary=str(inp),
                    source_article=(lambda a: str(a) if a else None)(_first(row, _ARTICLE_KEYS)),
                    domain_tag=domain,
                )
            )
    return result
