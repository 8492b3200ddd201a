"""Builds the evidence bundle for one verification question.

Dispatch on the configured evidence source:

* internal - empty bundle; the answering prompt gets no context.
* gold_article - the record's own news article as the single item.
* search + snippets - top-n engine snippets in rank order.
* search + full_article - fetch every result page, extract and chunk the
  text, embed all chunks pooled across pages, and keep the top-n passages
  by cosine similarity to the question.

The verification question text itself is the search query.
"""

from __future__ import annotations

from typing import Optional

from factfix.models import EvidenceBundle, EvidenceItem, PipelineConfig, SummaryRecord, concatenate_items
from factfix.retrieval.chunking import chunk_text
from factfix.retrieval.embeddings import CachingEmbedder
from factfix.retrieval.engines import SearchService
from factfix.retrieval.extract import fetch_and_extract
from factfix.retrieval.select import select_top_passages


def _bundle(source_kind, items, engine=None, mode=None, degraded=False) -> EvidenceBundle:
    return EvidenceBundle(
        source_kind=source_kind,
        engine=engine,
        mode=mode,
        items=items,
        concatenated=concatenate_items(items),
        degraded=degraded,
    )


def build_evidence(
    question: str,
    record: SummaryRecord,
    config: PipelineConfig,
    search_service: Optional[SearchService] = None,
    embedder: Optional[CachingEmbedder] = None,
    fetch=fetch_and_extract,
) -> EvidenceBundle:
    if config.evidence_source == "internal":
        return EvidenceBundle(source_kind="internal")

    if config.evidence_source == "gold_article":
        if not record.source_article:
            return EvidenceBundle(source_kind="gold_article", degraded=True)
        return _bundle("gold_article", [EvidenceItem(rank=1, text=record.source_article)])

    # search
    if search_service is None:
        raise ValueError("search evidence requires a search service")
    results = search_service.search(config.engine, question, config.top_n)

    if config.mode == "snippets":
        items = [
            EvidenceItem(rank=r.rank, text=r.snippet, url=r.url, title=r.title)
            for r in results
            if r.snippet
        ]
        items = [item.model_copy(update={"rank": i + 1}) for i, item in enumerate(items)]
        return _bundle("search", items, engine=config.engine, mode="snippets")

    # full_article mode: pool chunks from every fetched page, then top-n
    if embedder is None:
        raise ValueError("full-article evidence requires an embedder")
    pooled = []
    for result in results:
        text, _reason = fetch(result.url)
        if not text:
            continue
        pooled.extend(
            chunk_text(text, config.chunk_size, config.chunk_overlap, source_url=result.url)
        )
    if not pooled:
        return EvidenceBundle(
            source_kind="search", engine=config.engine, mode="full_article", degraded=True
        )
    # global positions across pages make the top-k tie-break deterministic
    pooled = [c.model_copy(update={"position": i}) for i, c in enumerate(pooled)]
    vectors = embedder.embed([c.text for c in pooled])
    pooled = [c.model_copy(update={"embedding": v}) for c, v in zip(pooled, vectors)]
    query_vec = embedder.embed([question])[0]
    top = select_top_passages(query_vec, pooled, config.top_n)
    items = [
        EvidenceItem(rank=i + 1, text=c.text, url=c.source_url or None, score=c.score)
        for i, c in enumerate(top)
    ]
    return _bundle("search", items, engine=config.engine, mode="full_article")
