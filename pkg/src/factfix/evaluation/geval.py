"""LLM-as-judge scoring with chain-of-thought rubric prompts.

Each aspect prompt asks the judge for a 1-10 integer; the raw score is
normalized to [0, 1] as (score - 1) / 9.
"""

from __future__ import annotations

import re

from factfix.llm.gateway import CompletionRequest, LLMGateway
from factfix.llm.templates import render

GEVAL_ASPECTS = ("factuality", "relevance", "overall")

_NUMBER = re.compile(r"(\d+(?:\.\d+)?)")


class UnparseableScoreError(RuntimeError):
    """Judge output held no numeric score even after a retry."""


def _parse_score(raw: str) -> float | None:
    match = _NUMBER.search(raw)
    if not match:
        return None
    score = float(match.group(1))
    return min(10.0, max(1.0, score))


def geval(
    aspect: str,
    input_summary: str,
    actual_output: str,
    gateway: LLMGateway,
    judge_backend: str,
    temperature: float = 0.0,
) -> float:
    """Score one aspect of an output on the judge's 1-10 scale, normalized."""
    if aspect not in GEVAL_ASPECTS:
        raise ValueError(f"unknown aspect {aspect!r}; expected one of {GEVAL_ASPECTS}")
    prompt = render(
        f"geval_{aspect}", {"input": input_summary, "actual_output": actual_output}
    )
    raw = gateway.complete(
        CompletionRequest(backend_id=judge_backend, prompt=prompt, temperature=temperature)
    ).text
    score = _parse_score(raw)
    if score is None:
        retry = prompt + "\n\nRespond with a single integer from 1 to 10 and nothing else."
        raw = gateway.complete(
            CompletionRequest(backend_id=judge_backend, prompt=retry, temperature=temperature)
        ).text
        score = _parse_score(raw)
        if score is None:
            raise UnparseableScoreError(f"no numeric score in judge output: {raw!r}")
    return (score - 1.0) / 9.0
