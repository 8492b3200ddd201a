"""Zero-shot correction variant: bold rewrites guided by Q/A pairs."""

from __future__ import annotations

from factfix.llm.gateway import parse_numbered_list
from factfix.llm.templates import render
from factfix.models import (
    EvidenceBundle,
    PipelineConfig,
    RefinedResponse,
    SummaryRecord,
    VerificationQuestion,
    VerifiedAnswer,
)
from factfix.pipeline.runner import (
    EmptyParseError,
    PipelineDeps,
    Tracer,
    complete_text,
    original_question_for,
)

_LIST_REMINDER = "\n\nOutput should be a numbered list."


def generate_questions(
    record: SummaryRecord, config: PipelineConfig, deps: PipelineDeps, tracer: Tracer
) -> list[VerificationQuestion]:
    prompt = render(
        "cove_gen_questions",
        {
            "original_question": original_question_for(record),
            "baseline_response": record.input_summary,
        },
    )
    raw = complete_text(deps, config, prompt)
    items = parse_numbered_list(raw)
    note = None
    if not items:
        prompt = prompt + _LIST_REMINDER
        raw = complete_text(deps, config, prompt)
        items = parse_numbered_list(raw)
        note = "retried with list reminder"
        if not items:
            tracer.add("generate_questions", prompt=prompt, raw_output=raw, note="empty parse")
            raise EmptyParseError("no numbered questions in LLM output")
    if len(items) > config.max_questions:
        items = items[: config.max_questions]
        note = (note + "; " if note else "") + f"truncated to {config.max_questions} questions"
    questions = [VerificationQuestion(index=i + 1, text=t) for i, t in enumerate(items)]
    tracer.add(
        "generate_questions",
        prompt=prompt,
        raw_output=raw,
        parsed=[q.text for q in questions],
        note=note,
    )
    return questions


def answer_question(
    question: VerificationQuestion,
    evidence: EvidenceBundle,
    config: PipelineConfig,
    deps: PipelineDeps,
    tracer: Tracer,
) -> VerifiedAnswer:
    prompt = render(
        "cove_answer",
        {"search_result": evidence.concatenated, "verification_question": question.text},
    )
    raw = complete_text(deps, config, prompt)
    answer = VerifiedAnswer(question_index=question.index, answer_text=raw.strip())
    tracer.add("answer", prompt=prompt, raw_output=raw, parsed=answer.answer_text)
    return answer


def format_qa_pairs(questions: list[VerificationQuestion], answers: list[VerifiedAnswer]) -> str:
    by_index = {a.question_index: a for a in answers}
    lines = []
    for q in questions:
        a = by_index[q.index]
        lines.append(f"Q{q.index}: {q.text}")
        lines.append(f"A{q.index}: {a.answer_text}")
    return "\n".join(lines)


def refine(
    record: SummaryRecord,
    questions: list[VerificationQuestion],
    answers: list[VerifiedAnswer],
    config: PipelineConfig,
    deps: PipelineDeps,
    tracer: Tracer,
) -> RefinedResponse:
    if not questions or len(questions) != len(answers):
        raise ValueError("need one answer per question, at least one pair")
    prompt = render(
        "cove_refine",
        {
            "original_question": original_question_for(record),
            "baseline_response": record.input_summary,
            "verification_answers": format_qa_pairs(questions, answers),
        },
    )
    raw = complete_text(deps, config, prompt)
    text = raw.strip()
    tracer.add("refine", prompt=prompt, raw_output=raw, parsed=text)
    return RefinedResponse(text=text, system="cove", trace=tracer.traces)
