import math
import random

import pytest
from hypothesis import given, strategies as st

from factfix.retrieval.chunking import Chunk, chunk_text
from factfix.retrieval.embeddings import CachingEmbedder, HashingEmbedder, cosine, get_embedder
from factfix.retrieval.select import select_top_passages


# --- chunking -------------------------------------------------------------


def test_chunk_sizes_no_overlap():
    text = " ".join(f"w{i}" for i in range(10))
    chunks = chunk_text(text, 4, 0)
    assert [len(c.text.split()) for c in chunks] == [4, 4, 2]
    assert [c.position for c in chunks] == [0, 1, 2]


def test_chunk_starts_with_overlap():
    words = [f"w{i}" for i in range(10)]
    chunks = chunk_text(" ".join(words), 4, 2)
    starts = [words.index(c.text.split()[0]) for c in chunks]
    assert starts == [0, 2, 4, 6, 8]


def test_chunk_empty_text():
    assert chunk_text("", 4, 0) == []
    assert chunk_text("   ", 4, 0) == []


def test_chunk_invalid_overlap():
    with pytest.raises(ValueError):
        chunk_text("a b c", 2, 2)


@given(
    st.integers(min_value=0, max_value=200),
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=0, max_value=19),
)
def test_chunk_coverage_property(n_words, chunk_size, overlap):
    if overlap >= chunk_size:
        overlap = chunk_size - 1
    words = [f"w{i}" for i in range(n_words)]
    chunks = chunk_text(" ".join(words), chunk_size, overlap)
    covered = set()
    stride = chunk_size - overlap
    for c in chunks:
        start = c.position * stride
        size = len(c.text.split())
        assert c.text.split() == words[start : start + size]
        covered.update(range(start, start + size))
    assert covered == set(range(n_words))
    # adjacent chunks share exactly `overlap` words while windows are full
    for a, b in zip(chunks, chunks[1:]):
        end_a = a.position * stride + len(a.text.split())
        start_b = b.position * stride
        if len(a.text.split()) == chunk_size:
            assert end_a - start_b == overlap


# --- cosine and embeddings ------------------------------------------------


def test_cosine_identical():
    assert cosine([1.0, 0.0], [1.0, 0.0]) == pytest.approx(1.0)


def test_cosine_orthogonal():
    assert cosine([1.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0)


def test_cosine_hand_computed():
    assert cosine([1, 2, 3], [4, 5, 6]) == pytest.approx(0.9746, abs=1e-4)


def test_cosine_zero_vector_rejected():
    with pytest.raises(ValueError):
        cosine([0.0, 0.0], [1.0, 0.0])


def test_cosine_dimension_mismatch():
    with pytest.raises(ValueError):
        cosine([1.0], [1.0, 2.0])


def test_embedder_deterministic():
    embedder = get_embedder("hash:32")
    [a1], [a2] = embedder.embed(["same text"]), embedder.embed(["same text"])
    assert a1 == a2


def test_embedder_equal_dimensions():
    embedder = get_embedder("hash")
    vecs = embedder.embed(["a", "b"])
    assert len(vecs) == 2
    assert len(vecs[0]) == len(vecs[1]) == 64


def test_embedder_self_similarity():
    embedder = get_embedder("hash:64")
    [v] = embedder.embed(["the cat sat on the mat"])
    assert cosine(v, v) == pytest.approx(1.0, abs=1e-6)


def test_embedder_cache_shortcircuits_provider():
    calls = []

    class Counting:
        name = "counting"

        def embed(self, texts):
            calls.append(list(texts))
            return [[1.0, float(len(t))] for t in texts]

    embedder = CachingEmbedder(Counting())
    embedder.embed(["x", "y"])
    embedder.embed(["x", "y", "z"])
    assert calls == [["x", "y"], ["z"]]


def test_unknown_embedder_spec():
    with pytest.raises(ValueError):
        get_embedder("magic:9000")


# --- top-k selection ------------------------------------------------------


def _chunks_with(vectors):
    return [
        Chunk(text=f"c{i}", position=i, embedding=list(map(float, v)))
        for i, v in enumerate(vectors)
    ]


def test_select_underfull_returns_all():
    chunks = _chunks_with([[1.0, 0.0]])
    out = select_top_passages([1.0, 0.0], chunks, 5)
    assert len(out) == 1
    assert out[0].score == pytest.approx(1.0)


def test_select_ties_broken_by_position():
    chunks = _chunks_with([[1.0, 0.0]] * 4)
    out = select_top_passages([1.0, 0.0], chunks, 2)
    assert [c.position for c in out] == [0, 1]


def test_select_matches_bruteforce_oracle():
    rng = random.Random(7)
    for _ in range(100):
        dim = rng.randint(2, 16)
        n = rng.randint(1, 50)
        chunks = _chunks_with(
            [[rng.uniform(-1, 1) or 0.5 for _ in range(dim)] for _ in range(n)]
        )
        query = [rng.uniform(-1, 1) or 0.5 for _ in range(dim)]
        k = rng.randint(1, 8)
        got = select_top_passages(query, chunks, k)
        # oracle: exhaustive score of every chunk, full sort
        oracle = sorted(
            ((cosine(query, c.embedding), c.position) for c in chunks),
            key=lambda t: (-t[0], t[1]),
        )[:k]
        assert [(c.score, c.position) for c in got] == oracle


def test_select_requires_embeddings():
    with pytest.raises(ValueError):
        select_top_passages([1.0, 0.0], [Chunk(text="no vec")], 1)
