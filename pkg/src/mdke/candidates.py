"""Candidate phrases: stopword-delimited chunks and their sub-spans."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyPhrase
from .text import Document, stem_word, word_spans

DEFAULT_MAX_LEN = 4


@dataclass(frozen=True)
class CandidatePhrase:
    surface: str
    stems: tuple[str, ...]
    occurrences: tuple[tuple[str, int, int], ...]  # (doc_id, first token position, sentence index)

    @property
    def length(self) -> int:
        return len(self.stems)

    @property
    def key(self) -> str:
        return " ".join(self.stems)

    @property
    def first_position(self) -> int:
        return self.occurrences[0][1]

    @property
    def frequency(self) -> int:
        return len(self.occurrences)


def content_chunks(doc: Document) -> list[tuple[int, int]]:
    """Maximal ``[start, end)`` token ranges free of stopwords, punctuation and sentence breaks."""
    chunks = []
    start = None
    toks = doc.tokens
    breaks = doc.breaks_before
    for i, tok in enumerate(toks):
        if tok.is_stopword:
            if start is not None:
                chunks.append((start, i))
                start = None
            continue
        if start is not None and breaks[i]:
            chunks.append((start, i))
            start = None
        if start is None:
            start = i
    if start is not None:
        chunks.append((start, len(toks)))
    return chunks


def extract_candidates(doc: Document, max_len: int = DEFAULT_MAX_LEN) -> list[CandidatePhrase]:
    """All sub-spans of up to ``max_len`` words of every content chunk, grouped by stem key.

    Returned in order of first occurrence (shorter first on equal start).
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    toks = doc.tokens
    occurrences: dict[tuple[str, ...], list[tuple[str, int, int]]] = {}
    surfaces: dict[tuple[str, ...], Counter] = {}
    for start, end in content_chunks(doc):
        for i in range(start, end):
            for j in range(i + 1, min(i + max_len, end) + 1):
                stems = tuple(t.stem for t in toks[i:j])
                occurrences.setdefault(stems, []).append(
                    (doc.id, i, toks[i].sentence_index)
                )
                surfaces.setdefault(stems, Counter())[
                    " ".join(t.surface for t in toks[i:j])
                ] += 1
    out = []
    for stems, occ in occurrences.items():
        # Counter.most_common keeps insertion order on ties, i.e. earliest surface.
        surface = surfaces[stems].most_common(1)[0][0]
        out.append(CandidatePhrase(surface, stems, tuple(occ)))
    out.sort(key=lambda c: (c.first_position, c.length))
    return out


def phrase_key(phrase: CandidatePhrase | str) -> str:
    """Canonical identity: stems joined by single spaces."""
    if isinstance(phrase, CandidatePhrase):
        if not phrase.stems:
            raise EmptyPhrase("candidate has no words")
        return phrase.key
    stems = [stem_word(surface) for surface, _, _ in word_spans(phrase)]
    if not stems:
        raise EmptyPhrase(f"phrase {phrase!r} has no words")
    return " ".join(stems)


def contains_ignoring_order(a: str, b: str) -> bool:
    """Whether the shorter key's stem multiset is a sub-multiset of the longer's."""
    ca, cb = Counter(a.split()), Counter(b.split())
    if sum(ca.values()) > sum(cb.values()):
        ca, cb = cb, ca
    return all(cb[s] >= n for s, n in ca.items())


def find_occurrences(key: str, doc: Document) -> list[int]:
    """Token positions where the stems of ``key`` appear contiguously in ``doc``."""
    stems = key.split()
    if not stems:
        return []
    doc_stems = doc.stems
    n = len(stems)
    return [
        p
        for p in doc.stem_positions.get(stems[0], ())
        if tuple(doc_stems[p : p + n]) == tuple(stems)
    ]


def first_occurrence(key: str, docs: Sequence[Document]) -> tuple[int, int] | None:
    """``(document index, token position)`` of the earliest occurrence, or None."""
    for di, doc in enumerate(docs):
        hits = find_occurrences(key, doc)
        if hits:
            return di, hits[0]
    return None


def occurs_in(key: str, docs: Iterable[Document]) -> bool:
    return any(find_occurrences(key, d) for d in docs)
