"""Shared domain types and their invariant checks.

Models are frozen pydantic values: immutable after construction and safe
to share across worker threads. Structural invariants that go beyond
field types are checked by :func:`violations`, which reports problems as
strings instead of raising, so that partially-bad data coming out of a
batch run can still be inspected.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict

SourceKind = Literal["internal", "gold_article", "search"]
EngineName = Literal["google", "bing", "ddg"]
EvidenceMode = Literal["snippets", "full_article"]
SystemName = Literal["cove", "rarr"]
AgreementLabel = Literal["agrees", "disagrees", "irrelevant"]
StageName = Literal["generate_questions", "retrieve", "answer", "refine"]

# Separator used when joining ranked evidence texts into one blob; keeps
# snippet boundaries visible to the LLM without inventing markup.
EVIDENCE_SEPARATOR = "\n\n"


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class SummaryRecord(_Frozen):
    """One dataset item: gold summary plus the hallucinated input summary."""

    id: str
    gold_summary: str
    input_summary: str
    source_article: Optional[str] = None
    domain_tag: str = "news"


class VerificationQuestion(_Frozen):
    index: int
    text: str


class EvidenceItem(_Frozen):
    rank: int
    text: str
    url: Optional[str] = None
    title: Optional[str] = None
    score: Optional[float] = None


class EvidenceBundle(_Frozen):
    """Evidence gathered for one verification question."""

    source_kind: SourceKind
    engine: Optional[EngineName] = None
    mode: Optional[EvidenceMode] = None
    items: list[EvidenceItem] = []
    concatenated: str = ""
    degraded: bool = False


def concatenate_items(items: list[EvidenceItem]) -> str:
    return EVIDENCE_SEPARATOR.join(item.text for item in sorted(items, key=lambda i: i.rank))


class VerifiedAnswer(_Frozen):
    question_index: int
    answer_text: str
    agreement: Optional[AgreementLabel] = None
    reasoning: Optional[str] = None


class StageTrace(_Frozen):
    """Audit record of a single pipeline step: prompt in, raw text out."""

    stage: StageName
    prompt: str = ""
    raw_output: str = ""
    parsed: Any = None
    timestamp: Optional[str] = None
    note: Optional[str] = None


class RefinedResponse(_Frozen):
    text: str
    system: SystemName
    trace: list[StageTrace] = []


class PipelineConfig(_Frozen):
    """Everything a run needs: system choice, backends, evidence source, knobs."""

    system: SystemName
    llm_backend: str
    evidence_source: SourceKind
    engine: Optional[EngineName] = None
    mode: Optional[EvidenceMode] = None
    max_questions: int = 5
    top_n: int = 5
    chunk_size: int = 256
    chunk_overlap: int = 64
    temperature: float = 0.0
    max_output_length: int = 1024
    # runtime plumbing
    embedder: str = "hash:64"
    nli_provider: str = "lexical"
    judge_backend: Optional[str] = None  # defaults to llm_backend
    search_fixtures_dir: Optional[str] = None
    cache_dir: Optional[str] = None
    record_timestamps: bool = False


class NliTriple(_Frozen):
    ent: float
    neu: float
    con: float


class GevalTriple(_Frozen):
    overall: float
    factuality: float
    relevance: float


class MetricReport(_Frozen):
    record_id: str
    ned: float
    sem: float
    nli: NliTriple
    geval: GevalTriple


class AggregateRow(_Frozen):
    """Dataset-level means of every metric for one run configuration."""

    system: str
    evidence_source: str
    engine: Optional[str] = None
    mode: Optional[str] = None
    n: int
    ned: float
    sem: float
    nli: NliTriple
    geval: GevalTriple


class RunManifest(_Frozen):
    run_id: str
    config: PipelineConfig
    dataset_digest: str
    record_count: int
    succeeded: list[str] = []
    failed: list[str] = []
    total_seconds: Optional[float] = None


_STAGE_ORDER = {"generate_questions": 0, "retrieve": 1, "answer": 2, "refine": 3}


def violations(value: Any) -> list[str]:
    """Return human-readable invariant violations for a domain value.

    Empty list means the value is valid. Nothing is raised: callers decide
    whether a violation is fatal.
    """
    out: list[str] = []
    if isinstance(value, SummaryRecord):
        if not value.id:
            out.append("id empty")
        if not value.gold_summary:
            out.append("gold_summary empty")
        if not value.input_summary:
            out.append("input_summary empty")
    elif isinstance(value, VerificationQuestion):
        if value.index < 1:
            out.append("index must be >= 1")
        if not value.text:
            out.append("text empty")
    elif isinstance(value, EvidenceItem):
        if value.rank < 1:
            out.append("rank must be >= 1")
        if not value.text:
            out.append("text empty")
    elif isinstance(value, EvidenceBundle):
        ranks = [item.rank for item in value.items]
        if ranks != list(range(1, len(ranks) + 1)):
            out.append("item ranks not contiguous from 1")
        if value.source_kind == "search":
            if value.engine is None:
                out.append("search bundle missing engine")
            if value.mode is None:
                out.append("search bundle missing mode")
        if value.source_kind == "internal":
            if value.items:
                out.append("internal bundle must have no items")
            if value.concatenated:
                out.append("internal bundle must have empty concatenated text")
        if value.items and value.concatenated != concatenate_items(value.items):
            out.append("concatenated text does not match joined item texts")
    elif isinstance(value, VerifiedAnswer):
        if value.question_index < 1:
            out.append("question_index must be >= 1")
    elif isinstance(value, RefinedResponse):
        if not value.text:
            out.append("text empty")
        stages = [_STAGE_ORDER[t.stage] for t in value.trace]
        if stages != sorted(stages):
            out.append("trace stages out of workflow order")
    elif isinstance(value, PipelineConfig):
        if value.max_questions < 1:
            out.append("max_questions must be >= 1")
        if value.top_n < 1:
            out.append("top_n must be >= 1")
        if not (0 <= value.chunk_overlap < value.chunk_size):
            out.append("chunk_overlap must satisfy 0 <= overlap < chunk_size")
        if value.temperature < 0:
            out.append("temperature must be >= 0")
        if value.evidence_source == "search":
            if value.engine is None:
                out.append("search source requires an engine")
            if value.mode is None:
                out.append("search source requires a mode")
    elif isinstance(value, NliTriple):
        if abs(value.ent + value.neu + value.con - 1.0) > 1e-6:
            out.append("NLI probabilities do not sum to 1")
    elif isinstance(value, MetricReport):
        out.extend(violations(value.nli))
        if not (0.0 <= value.ned <= 1.0):
            out.append("ned out of [0, 1]")
    elif isinstance(value, RunManifest):
        if len(value.succeeded) + len(value.failed) != value.record_count:
            out.append("succeeded + failed != record_count")
    return out


def questions_violations(questions: list[VerificationQuestion]) -> list[str]:
    """Check that question indices form a contiguous 1..k sequence."""
    out = []
    indices = [q.index for q in questions]
    if indices != list(range(1, len(indices) + 1)):
        out.append("question indices not contiguous from 1")
    for q in questions:
        out.extend(violations(q))
    return out
