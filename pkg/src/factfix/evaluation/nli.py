"""Three-way entailment scoring with pluggable providers.

Orientation is fixed and load-bearing: the generated text is the premise
and the gold reference is the hypothesis, since a good output should
entail the reference. Providers return (entailment, neutral,
contradiction) probabilities summing to 1.

The default provider is a deterministic lexical heuristic so the suite
runs offline; a DeBERTa-style transformer provider is available when the
optional model dependencies are installed.
"""

from __future__ import annotations

import logging
import re
from typing import Protocol

log = logging.getLogger(__name__)

_TOKEN = re.compile(r"\w+")
_NEGATIONS = {"not", "no", "never", "none", "neither", "nor", "cannot"}
_STOPWORDS = {
    "a", "an", "the", "and", "or", "but", "of", "to", "in", "on", "at", "for",
    "with", "by", "is", "are", "was", "were", "be", "been", "it", "its", "this",
    "that", "as", "from",
}


class NliProvider(Protocol):
    name: str

    def scores(self, premise: str, hypothesis: str) -> tuple[float, float, float]: ...


class LexicalOverlapNli:
    """Deterministic heuristic NLI from content-token coverage.

    Entailment mass grows with the fraction of hypothesis content tokens
    found in the premise (asymmetric by construction); contradiction mass
    grows with negation-polarity mismatch between the texts. Not a model,
    but exact on the contract: probabilities are nonnegative and sum to 1.
    """

    name = "lexical"

    def _content(self, text: str) -> set[str]:
        return {
            t for t in (tok.lower() for tok in _TOKEN.findall(text)) if t not in _STOPWORDS
        }

    def _negation_count(self, text: str) -> int:
        return sum(1 for tok in _TOKEN.findall(text.lower()) if tok in _NEGATIONS)

    def scores(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        hyp = self._content(hypothesis)
        prem = self._content(premise)
        coverage = len(hyp & prem) / len(hyp) if hyp else 0.0
        polarity_mismatch = (self._negation_count(premise) % 2) != (
            self._negation_count(hypothesis) % 2
        )
        con_raw = 0.6 if polarity_mismatch else 0.1 * (1.0 - coverage)
        ent_raw = coverage * (1.0 - con_raw)
        neu_raw = max(0.0, 1.0 - ent_raw - con_raw)
        total = ent_raw + neu_raw + con_raw
        if total == 0.0:
            return (0.0, 1.0, 0.0)
        ent, neu, con = ent_raw / total, neu_raw / total, con_raw / total
        # make the sum exactly 1 despite float division
        return (ent, 1.0 - ent - con, con)


class TransformersNli:
    """DeBERTa-style NLI via transformers (optional extra).

    The premise is truncated from the end (its beginning is kept) to fit
    the model's input window; the hypothesis is never truncated.
    """

    def __init__(self, model_name: str = "MoritzLaurer/DeBERTa-v3-base-mnli-fever-anli"):
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        self._tokenizer = AutoTokenizer.from_pretrained(model_name)
        self._model = AutoModelForSequenceClassification.from_pretrained(model_name)
        self._labels = {
            label.lower(): idx for idx, label in self._model.config.id2label.items()
        }
        self.name = f"deberta:{model_name}"

    def scores(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        import torch

        max_len = self._tokenizer.model_max_length
        hyp_len = len(self._tokenizer.encode(hypothesis))
        premise_ids = self._tokenizer.encode(premise, add_special_tokens=False)
        budget = max_len - hyp_len - 3
        if len(premise_ids) > budget:
            log.warning("premise truncated from %d to %d tokens", len(premise_ids), budget)
            premise = self._tokenizer.decode(premise_ids[:budget])
        inputs = self._tokenizer(premise, hypothesis, truncation=True, return_tensors="pt")
        with torch.no_grad():
            logits = self._model(**inputs).logits[0]
        probs = torch.softmax(logits, dim=-1).tolist()
        ent = probs[self._labels.get("entailment", 0)]
        neu = probs[self._labels.get("neutral", 1)]
        con = probs[self._labels.get("contradiction", 2)]
        total = ent + neu + con
        ent, con = ent / total, con / total
        return (ent, 1.0 - ent - con, con)


def get_nli_provider(spec: str) -> NliProvider:
    kind, _, arg = spec.partition(":")
    if kind == "lexical":
        return LexicalOverlapNli()
    if kind == "deberta":
        return TransformersNli(arg) if arg else TransformersNli()
    raise ValueError(f"unknown NLI provider spec: {spec!r}")


def nli_scores(
    generated: str, reference: str, provider: NliProvider
) -> tuple[float, float, float]:
    """Score with mandatory orientation: premise = generated, hypothesis = reference."""
    if not generated or not reference:
        raise ValueError("NLI scoring needs nonempty texts")
    return provider.scores(generated, reference)
