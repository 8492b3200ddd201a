"""Top-k passage selection by cosine similarity to the query."""

from __future__ import annotations

from factfix.retrieval.chunking import Chunk
from factfix.retrieval.embeddings import cosine


def select_top_passages(query_embedding: list[float], chunks: list[Chunk], k: int) -> list[Chunk]:
    """Return the k chunks most similar to the query embedding.

    Ordered by descending score; ties broken by smaller position. Chunks
    must carry embeddings. Fewer than k chunks returns them all (scored).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    scored = []
    for chunk in chunks:
        if chunk.embedding is None:
            raise ValueError("chunk without embedding")
        score = cosine(query_embedding, chunk.embedding)
        scored.append(chunk.model_copy(update={"score": score}))
    scored.sort(key=lambda c: (-c.score, c.position))
    return scored[:k]
