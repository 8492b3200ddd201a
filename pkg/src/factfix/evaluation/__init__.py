from factfix.evaluation.geval import GEVAL_ASPECTS, UnparseableScoreError, geval
from factfix.evaluation.metrics import (
    aggregate,
    alignment_report,
    combine_rows,
    levenshtein,
    ned,
    pearson,
    percent,
    semantic_similarity,
)
from factfix.evaluation.nli import LexicalOverlapNli, get_nli_provider, nli_scores

__all__ = [
    "GEVAL_ASPECTS",
    "LexicalOverlapNli",
    "UnparseableScoreError",
    "aggregate",
    "alignment_report",
    "combine_rows",
    "geval",
    "get_nli_provider",
    "levenshtein",
    "ned",
    "nli_scores",
    "pearson",
    "percent",
    "semantic_similarity",
]
