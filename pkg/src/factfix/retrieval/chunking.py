"""Sliding-window chunking of article text on whitespace tokens."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict


class Chunk(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    source_url: str = ""
    position: int = 0
    embedding: Optional[list[float]] = None
    score: Optional[float] = None


def chunk_text(text: str, chunk_size: int, overlap: int = 0, source_url: str = "") -> list[Chunk]:
    """Split text into overlapping word windows.

    Windows are ``chunk_size`` words long and start every
    ``chunk_size - overlap`` words; the last window may be shorter.
    Empty text yields an empty list.
    """
    if not (0 <= overlap < chunk_size):
        raise ValueError("need 0 <= overlap < chunk_size")
    words = text.split()
    if not words:
        return []
    stride = chunk_size - overlap
    chunks = []
    for position, start in enumerate(range(0, len(words), stride)):
        window = words[start : start + chunk_size]
        chunks.append(Chunk(text=" ".join(window), source_url=source_url, position=position))
    return chunks
