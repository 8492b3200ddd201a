"""Pluggable text embedding providers and cosine similarity.

The default provider is a deterministic bag-of-words feature hasher: no
model downloads, no network, identical vectors for identical strings. A
SimCSE-style sentence-transformer provider is available when the optional
model dependencies are installed.
"""

from __future__ import annotations

import hashlib
import math
import re
import threading
from typing import Protocol

_TOKEN = re.compile(r"\w+")


class EmbeddingProvider(Protocol):
    name: str

    def embed(self, texts: list[str]) -> list[list[float]]: ...


def cosine(u: list[float], v: list[float]) -> float:
    """Standard cosine similarity; raises on zero vectors or dim mismatch."""
    if len(u) != len(v):
        raise ValueError("vectors must have equal dimension")
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    return dot / (nu * nv)


class HashingEmbedder:
    """Deterministic bag-of-words embedding via token hashing.

    Each lowercased token is hashed into one of ``dim`` buckets with a
    sign; the resulting count vector is L2-normalized. Crude but stable,
    symmetric, and monotone in lexical overlap, which is what the tests
    and offline runs need.
    """

    def __init__(self, dim: int = 64):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim
        self.name = f"hash:{dim}"

    def _vector(self, text: str) -> list[float]:
        vec = [0.0] * self.dim
        for token in _TOKEN.findall(text.lower()):
            digest = hashlib.md5(token.encode("utf-8")).digest()
            bucket = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vec[bucket] += sign
        norm = math.sqrt(sum(x * x for x in vec))
        if norm == 0.0:
            # degenerate input (no tokens): fixed unit vector keeps cosine defined
            vec[0] = 1.0
            return vec
        return [x / norm for x in vec]

    def embed(self, texts: list[str]) -> list[list[float]]:
        return [self._vector(t) for t in texts]


class SentenceTransformerEmbedder:
    """SimCSE-style embeddings via sentence-transformers (optional extra)."""

    def __init__(self, model_name: str = "princeton-nlp/sup-simcse-roberta-base"):
        from sentence_transformers import SentenceTransformer

        self._model = SentenceTransformer(model_name)
        self.name = f"simcse:{model_name}"

    def embed(self, texts: list[str]) -> list[list[float]]:
        return [list(map(float, v)) for v in self._model.encode(texts)]


class CachingEmbedder:
    """Wraps a provider with a per-text digest cache (thread-safe)."""

    def __init__(self, provider: EmbeddingProvider):
        self.provider = provider
        self.name = provider.name
        self._cache: dict[str, list[float]] = {}
        self._lock = threading.Lock()

    def embed(self, texts: list[str]) -> list[list[float]]:
        keys = [hashlib.sha256(t.encode("utf-8")).hexdigest() for t in texts]
        with self._lock:
            missing = [(i, t) for i, (k, t) in enumerate(zip(keys, texts)) if k not in self._cache]
        if missing:
            vectors = self.provider.embed([t for _, t in missing])
            with self._lock:
                for (i, _), vec in zip(missing, vectors):
                    self._cache[keys[i]] = vec
        with self._lock:
            return [self._cache[k] for k in keys]


def get_embedder(spec: str) -> CachingEmbedder:
    """Build a caching embedder from a spec string.

    ``hash`` or ``hash:<dim>`` for the deterministic hasher;
    ``simcse`` or ``simcse:<model>`` for sentence-transformers.
    """
    kind, _, arg = spec.partition(":")
    if kind == "hash":
        return CachingEmbedder(HashingEmbedder(dim=int(arg) if arg else 64))
    if kind == "simcse":
        if arg:
            return CachingEmbedder(SentenceTransformerEmbedder(arg))
        return CachingEmbedder(SentenceTransformerEmbedder())
    raise ValueError(f"unknown embedder spec: {spec!r}")
