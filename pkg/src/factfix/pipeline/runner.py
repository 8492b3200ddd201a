"""Orchestration of the four-stage correction workflow.

Both system variants share the shape: generate verification questions,
retrieve evidence per question, answer each question against its
evidence, and rewrite the input summary. The trace records every prompt
and raw completion in workflow-stage order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Callable, Optional

from factfix.llm.gateway import CompletionRequest, LLMGateway
from factfix.models import (
    EvidenceBundle,
    PipelineConfig,
    RefinedResponse,
    StageTrace,
    SummaryRecord,
    VerificationQuestion,
    VerifiedAnswer,
)
from factfix.retrieval.embeddings import CachingEmbedder
from factfix.retrieval.engines import SearchService
from factfix.retrieval.evidence import build_evidence
from factfix.retrieval.extract import fetch_and_extract


class EmptyParseError(RuntimeError):
    """The LLM output contained no parseable items even after a retry."""


@dataclass
class PipelineDeps:
    """Everything run_pipeline needs besides the record and config."""

    gateway: LLMGateway
    search_service: Optional[SearchService] = None
    embedder: Optional[CachingEmbedder] = None
    fetch: Callable = fetch_and_extract


class Tracer:
    """Collects stage traces; timestamps only when the config asks for them."""

    def __init__(self, record_timestamps: bool = False):
        self.record_timestamps = record_timestamps
        self.traces: list[StageTrace] = []

    def add(
        self,
        stage: str,
        prompt: str = "",
        raw_output: str = "",
        parsed: Any = None,
        note: Optional[str] = None,
    ) -> None:
        timestamp = (
            datetime.now(timezone.utc).isoformat() if self.record_timestamps else None
        )
        self.traces.append(
            StageTrace(
                stage=stage,
                prompt=prompt,
                raw_output=raw_output,
                parsed=parsed,
                timestamp=timestamp,
                note=note,
            )
        )


def complete_text(deps: PipelineDeps, config: PipelineConfig, prompt: str, backend: Optional[str] = None) -> str:
    result = deps.gateway.complete(
        CompletionRequest(
            backend_id=backend or config.llm_backend,
            prompt=prompt,
            temperature=config.temperature,
            max_output_length=config.max_output_length,
        )
    )
    return result.text


def original_question_for(record: SummaryRecord) -> str:
    """The originating instruction the zero-shot prompts are framed around."""
    instruction = "Summarize the news article accurately."
    if record.source_article:
        return f"{instruction}\n\nArticle: {record.source_article}"
    return instruction


def retrieve_all(
    questions: list[VerificationQuestion],
    record: SummaryRecord,
    config: PipelineConfig,
    deps: PipelineDeps,
    tracer: Tracer,
) -> list[EvidenceBundle]:
    bundles = []
    for question in questions:
        bundle = build_evidence(
            question.text,
            record,
            config,
            search_service=deps.search_service,
            embedder=deps.embedder,
            fetch=deps.fetch,
        )
        tracer.add(
            "retrieve",
            parsed=json.loads(bundle.model_dump_json()),
            note=f"question {question.index}",
        )
        bundles.append(bundle)
    return bundles


def run_pipeline(record: SummaryRecord, config: PipelineConfig, deps: PipelineDeps) -> RefinedResponse:
    from factfix.pipeline import cove, rarr

    tracer = Tracer(record_timestamps=config.record_timestamps)
    if config.system == "cove":
        questions = cove.generate_questions(record, config, deps, tracer)
        bundles = retrieve_all(questions, record, config, deps, tracer)
        answers = [
            cove.answer_question(q, b, config, deps, tracer)
            for q, b in zip(questions, bundles)
        ]
        return cove.refine(record, questions, answers, config, deps, tracer)

    questions = rarr.generate_questions(record, config, deps, tracer)
    bundles = retrieve_all(questions, record, config, deps, tracer)
    answers = [
        rarr.answer_question(record.input_summary, q, b, config, deps, tracer)
        for q, b in zip(questions, bundles)
    ]
    return rarr.refine(record, questions, bundles, answers, config, deps, tracer)
