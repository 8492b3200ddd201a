from factfix.retrieval.chunking import Chunk, chunk_text
from factfix.retrieval.embeddings import CachingEmbedder, HashingEmbedder, cosine, get_embedder
from factfix.retrieval.engines import (
    EngineUnavailableError,
    QuotaExceededError,
    SearchResult,
    SearchService,
)
from factfix.retrieval.evidence import build_evidence
from factfix.retrieval.extract import extract_text, fetch_and_extract
from factfix.retrieval.select import select_top_passages

__all__ = [
    "CachingEmbedder",
    "Chunk",
    "EngineUnavailableError",
    "HashingEmbedder",
    "QuotaExceededError",
    "SearchResult",
    "SearchService",
    "build_evidence",
    "chunk_text",
    "cosine",
    "extract_text",
    "fetch_and_extract",
    "get_embedder",
    "select_top_passages",
]
