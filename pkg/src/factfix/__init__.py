"""Self-correcting hallucination repair for news summaries.

Two pipeline variants (a zero-shot one and a few-shot one) generate
verification questions about a hallucinated summary, answer them against
evidence from a search engine, the gold article, or the model's own
knowledge, and rewrite the summary. A metric suite (normalized edit
distance, embedding similarity, NLI probabilities, LLM-as-judge) scores
the results against gold summaries.
"""

__version__ = "0.1.0"
