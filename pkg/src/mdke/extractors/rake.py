"""RAKE: degree-over-frequency scoring of stopword-delimited chunks."""

from __future__ import annotations

import math
from collections import Counter

from ..candidates import content_chunks, extract_candidates
from ..errors import EmptyCandidateSpace
from ..text import Document
from .base import RankedKeyphraseList, rank_candidates

DEFAULT_MAX_WORDS = 3


def rake_chunks(doc: Document) -> list[tuple[str, ...]]:
    """Stem tuples of every maximal chunk occurrence, in document order."""
    toks = doc.tokens
    return [tuple(t.stem for t in toks[a:b]) for a, b in content_chunks(doc)]


def word_degree_frequency(chunks: list[tuple[str, ...]]) -> tuple[Counter, Counter]:
    degree: Counter = Counter()
    freq: Counter = Counter()
    for chunk in chunks:
        for stem in chunk:
            freq[stem] += 1
            degree[stem] += len(chunk)
    return degree, freq


def rake_extract(doc: Document, n: int | None, max_words: int = DEFAULT_MAX_WORDS) -> RankedKeyphraseList:
    """Chunks scored by the sum of deg(w)/freq(w); chunks over ``max_words`` words are dropped.

    Degrees and frequencies are counted over all chunks, long ones included.
    """
    chunks = rake_chunks(doc)
    if not chunks:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    degree, freq = word_degree_frequency(chunks)
    keep = {" ".join(c) for c in chunks if len(c) <= max_words}
    candidates = [c for c in extract_candidates(doc, max_words) if c.key in keep]
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no chunk of at most {max_words} words")
    scores = {c.key: math.fsum(degree[s] / freq[s] for s in c.stems) for c in candidates}
    return rank_candidates(candidates, scores, n, doc.id)
