"""Few-shot correction variant: conservative, agreement-gated edits.

Questions come back as "I googled: ..." lines; each answer carries an
agreement verdict parsed from its "Therefore:" line; only disagreeing
answers trigger an edit, applied sequentially to the running text. With
zero disagreements the output is byte-identical to the input summary.
"""

from __future__ import annotations

import re
from typing import Optional

from factfix.llm.gateway import parse_numbered_list
from factfix.llm.templates import render
from factfix.models import (
    AgreementLabel,
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
)

_GOOGLED_PREFIX = re.compile(r"^\s*I googled:\s*", re.IGNORECASE)
_THEREFORE = re.compile(r"Therefore:\s*(.+)", re.IGNORECASE)
_REASONING = re.compile(r"Reasoning:\s*(.+)", re.IGNORECASE)
_MY_FIX = re.compile(r"My fix:\s*", re.IGNORECASE)
_LIST_REMINDER = "\n\nOutput should be a numbered list."


def generate_questions(
    record: SummaryRecord, config: PipelineConfig, deps: PipelineDeps, tracer: Tracer
) -> list[VerificationQuestion]:
    prompt = render("rarr_gen_questions", {"claim": record.input_summary})
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
    # items without the few-shot "I googled:" prefix are taken as-is
    items = [_GOOGLED_PREFIX.sub("", item).strip() for item in items]
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


def parse_agreement(raw: str) -> Optional[AgreementLabel]:
    match = _THEREFORE.search(raw)
    if not match:
        return None
    verdict = match.group(1).lower()
    if "disagrees" in verdict:
        return "disagrees"
    if "agrees" in verdict:
        return "agrees"
    return "irrelevant"


def answer_question(
    claim: str,
    question: VerificationQuestion,
    evidence: EvidenceBundle,
    config: PipelineConfig,
    deps: PipelineDeps,
    tracer: Tracer,
) -> VerifiedAnswer:
    prompt = render(
        "rarr_answer",
        {"claim": claim, "query": question.text, "evidence": evidence.concatenated},
    )
    raw = complete_text(deps, config, prompt)
    agreement = parse_agreement(raw)
    note = None
    if agreement is None:
        retry_prompt = prompt + '\n\nEnd your answer with a "5. Therefore:" line.'
        raw = complete_text(deps, config, retry_prompt)
        agreement = parse_agreement(raw)
        note = "retried for Therefore line"
        if agreement is None:
            agreement = "irrelevant"
            note = "no Therefore line after retry; treated as irrelevant"
    reasoning_match = _REASONING.search(raw)
    reasoning = reasoning_match.group(1).strip() if reasoning_match else raw.strip()
    answer = VerifiedAnswer(
        question_index=question.index,
        answer_text=raw.strip(),
        agreement=agreement,
        reasoning=reasoning,
    )
    tracer.add("answer", prompt=prompt, raw_output=raw, parsed=agreement, note=note)
    return answer


def parse_fix(raw: str) -> Optional[str]:
    match = _MY_FIX.search(raw)
    if not match:
        return None
    fix = raw[match.end():].strip()
    return fix or None


def refine(
    record: SummaryRecord,
    questions: list[VerificationQuestion],
    bundles: list[EvidenceBundle],
    answers: list[VerifiedAnswer],
    config: PipelineConfig,
    deps: PipelineDeps,
    tracer: Tracer,
) -> RefinedResponse:
    if not answers:
        raise ValueError("need at least one answered question")
    current = record.input_summary
    edited = False
    by_index = {q.index: (q, b) for q, b in zip(questions, bundles)}
    for answer in answers:
        if answer.agreement != "disagrees":
            continue
        edited = True
        question, bundle = by_index[answer.question_index]
        prompt = render(
            "rarr_refine",
            {"claim": current, "query": question.text, "evidence": bundle.concatenated},
        )
        raw = complete_text(deps, config, prompt)
        fix = parse_fix(raw)
        note = None
        if fix is None:
            retry_prompt = prompt + '\n\nEnd your answer with a "5. My fix:" line.'
            raw = complete_text(deps, config, retry_prompt)
            fix = parse_fix(raw)
            note = "retried for My fix line"
            if fix is None:
                tracer.add(
                    "refine",
                    prompt=prompt,
                    raw_output=raw,
                    note="no My fix line after retry; edit skipped",
                )
                continue
        current = fix
        tracer.add("refine", prompt=prompt, raw_output=raw, parsed=current, note=note)
    if not edited:
        tracer.add("refine", note="no disagreements; input summary unchanged")
    return RefinedResponse(text=current, system="rarr", trace=tracer.traces)
