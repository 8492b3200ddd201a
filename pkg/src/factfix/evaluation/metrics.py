"""Pure-math metrics: edit distance, similarity, correlation, aggregation."""

from __future__ import annotations

import math
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from factfix.models import AggregateRow, GevalTriple, MetricReport, NliTriple
from factfix.retrieval.embeddings import CachingEmbedder, cosine


def levenshtein(a: str, b: str) -> int:
    """Character-level edit distance, two-row dynamic programming."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,  # deletion
                    current[j - 1] + 1,  # insertion
                    previous[j - 1] + (ca != cb),  # substitution
                )
            )
        previous = current
    return previous[-1]


def ned(a: str, b: str) -> float:
    """Normalized edit distance: levenshtein / max length, in [0, 1]."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return levenshtein(a, b) / longest


def semantic_similarity(a: str, b: str, embedder: CachingEmbedder) -> float:
    """Cosine similarity of the embedding provider's vectors for a and b."""
    if not a or not b:
        raise ValueError("semantic similarity needs nonempty texts")
    va, vb = embedder.embed([a, b])
    return cosine(va, vb)


def pearson(xs: list[float], ys: list[float]) -> float:
    """Sample Pearson correlation coefficient."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two equal-length series of length >= 2")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("pearson undefined for zero-variance input")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


def percent(value: float) -> int:
    """Round a [0, 1] mean to an integer percent, half-up."""
    return int(Decimal(value * 100).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def _mean(values: list[float]) -> float:
    return sum(values) / len(values)


def aggregate(
    reports: list[MetricReport],
    system: str,
    evidence_source: str,
    engine: Optional[str] = None,
    mode: Optional[str] = None,
) -> AggregateRow:
    """Arithmetic means of every metric field over a set of reports."""
    if not reports:
        raise ValueError("cannot aggregate an empty report list")
    return AggregateRow(
        system=system,
        evidence_source=evidence_source,
        engine=engine,
        mode=mode,
        n=len(reports),
        ned=_mean([r.ned for r in reports]),
        sem=_mean([r.sem for r in reports]),
        nli=NliTriple(
            ent=_mean([r.nli.ent for r in reports]),
            neu=_mean([r.nli.neu for r in reports]),
            con=_mean([r.nli.con for r in reports]),
        ),
        geval=GevalTriple(
            overall=_mean([r.geval.overall for r in reports]),
            factuality=_mean([r.geval.factuality for r in reports]),
            relevance=_mean([r.geval.relevance for r in reports]),
        ),
    )


def combine_rows(rows: list[AggregateRow]) -> AggregateRow:
    """Weighted (by n) combination of shard aggregates; map-reduce consistent."""
    if not rows:
        raise ValueError("cannot combine zero rows")
    total = sum(row.n for row in rows)

    def wmean(get) -> float:
        return sum(get(row) * row.n for row in rows) / total

    first = rows[0]
    return AggregateRow(
        system=first.system,
        evidence_source=first.evidence_source,
        engine=first.engine,
        mode=first.mode,
        n=total,
        ned=wmean(lambda r: r.ned),
        sem=wmean(lambda r: r.sem),
        nli=NliTriple(
            ent=wmean(lambda r: r.nli.ent),
            neu=wmean(lambda r: r.nli.neu),
            con=wmean(lambda r: r.nli.con),
        ),
        geval=GevalTriple(
            overall=wmean(lambda r: r.geval.overall),
            factuality=wmean(lambda r: r.geval.factuality),
            relevance=wmean(lambda r: r.geval.relevance),
        ),
    )


def alignment_report(
    human_means: dict[str, float], judge_means: dict[str, float]
) -> list[dict]:
    """Per-method (human mean, judge mean, diff) rows; diff = human - judge.

    Diffs are rounded to two decimals for table display.
    """
    if set(human_means) != set(judge_means):
        raise ValueError("method keys do not match between the two score maps")
    rows = []
    for method in human_means:
        human = human_means[method]
        judge = judge_means[method]
        diff = float(Decimal(str(human - judge)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
        rows.append({"method": method, "human": human, "judge": judge, "diff": diff})
    return rows
