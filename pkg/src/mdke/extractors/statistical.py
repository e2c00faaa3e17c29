"""Frequency-based extractors: Tf-Idf, KP-Miner and YAKE."""

from __future__ import annotations

import math
import statistics
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..candidates import extract_candidates, find_occurrences
from ..errors import EmptyCandidateSpace
from ..text import Document
from .base import ExtractorId, RankedKeyphraseList, rank_candidates


def stem_document_frequencies(docs: Sequence[Document]) -> Counter:
    df: Counter = Counter()
    for doc in docs:
        df.update(doc.stem_set)
    return df


def smoothed_idf(df: int, corpus_size: int) -> float:
    return math.log((1 + corpus_size) / (1 + df))


def tfidf_extract(
    doc: Document,
    corpus_df: Mapping[str, int],
    corpus_size: int,
    n: int | None,
    max_len: int = 4,
) -> RankedKeyphraseList:
    """Candidate score: sum over its stems of ``tf(stem) * log((1+N)/(1+df(stem)))``."""
    if corpus_size < 1:
        raise ValueError("corpus_size must be >= 1")
    candidates = extract_candidates(doc, max_len)
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    tf = Counter(doc.stems)
    weight = {
        s: tf[s] * smoothed_idf(corpus_df.get(s, 0), corpus_size)
        for c in candidates
        for s in c.stems
    }
    scores = {c.key: math.fsum(weight[s] for s in c.stems) for c in candidates}
    return rank_candidates(candidates, scores, n, doc.id)


def kpminer_extract(
    doc: Document,
    corpus: Sequence[Document],
    n: int | None,
    *,
    max_len: int = 4,
    lasf: int = 3,
    cutoff: int = 400,
    alpha: float = 2.3,
    sigma: float = 3.0,
) -> RankedKeyphraseList:
    """KP-Miner: positional and frequency filtering, then boosted phrase tf-idf.

    When the least-allowable-seen-frequency filter would leave nothing (short
    documents), only the cutoff filter is applied.
    """
    candidates = extract_candidates(doc, max_len)
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    early = [c for c in candidates if c.first_position < cutoff]
    kept = [c for c in early if c.frequency >= lasf] or early
    corpus = list(corpus) or [doc]
    multi = sum(1 for c in kept if c.length > 1)
    boost = min(len(kept) / (multi * alpha), sigma) if multi else 1.0
    scores = {}
    for c in kept:
        df = sum(1 for d in corpus if find_occurrences(c.key, d))
        idf = math.log2((1 + len(corpus)) / (1 + df))
        scores[c.key] = c.frequency * idf * (boost if c.length > 1 else 1.0)
    return rank_candidates(kept, scores, n, doc.id)


@dataclass(frozen=True)
class YakeFeatures:
    tf: int
    tf_upper: int
    tf_acronym: int
    casing: float
    position: float
    frequency: float
    relatedness: float
    sentence: float
    score: float


def _is_acronym(surface: str) -> bool:
    letters = [ch for ch in surface if ch.isalpha()]
    return len(surface) > 1 and len(letters) > 1 and all(ch.isupper() for ch in letters)


def yake_term_features(doc: Document, window: int = 1) -> dict[str, YakeFeatures]:
    """Per-stem YAKE statistics over non-stopword terms (lower score is better)."""
    toks = doc.tokens
    breaks = doc.breaks_before
    n_sentences = len(doc.sentences)
    tf: Counter = Counter()
    upper: Counter = Counter()
    acronym: Counter = Counter()
    sentences: dict[str, set[int]] = defaultdict(set)
    left: dict[str, Counter] = defaultdict(Counter)
    right: dict[str, Counter] = defaultdict(Counter)
    for i, tok in enumerate(toks):
        if tok.is_stopword:
            continue
        s = tok.stem
        tf[s] += 1
        sentences[s].add(tok.sentence_index)
        if _is_acronym(tok.surface):
            acronym[s] += 1
        elif tok.surface[:1].isupper() and i > 0 and not _sentence_start(toks, i):
            upper[s] += 1
        # Context words within the window, stopping at punctuation or sentence breaks.
        j = i
        for _ in range(window):
            if breaks[j]:
                break
            j -= 1
            left[s][toks[j].stem] += 1
        j = i
        for _ in range(window):
            if j + 1 >= len(toks) or breaks[j + 1]:
                break
            j += 1
            right[s][toks[j].stem] += 1
    if not tf:
        return {}
    counts = list(tf.values())
    mean_tf = statistics.fmean(counts)
    std_tf = statistics.pstdev(counts)
    max_tf = max(counts)
    out = {}
    for s, f in tf.items():
        casing = max(upper[s], acronym[s]) / (1.0 + math.log(f))
        position = math.log(math.log(3.0 + statistics.median(sorted(sentences[s]))))
        frequency = f / (mean_tf + std_tf)
        dl = len(left[s]) / sum(left[s].values()) if left[s] else 0.0
        dr = len(right[s]) / sum(right[s].values()) if right[s] else 0.0
        relatedness = 1.0 + (dl + dr) * f / max_tf
        sentence = len(sentences[s]) / n_sentences
        score = (relatedness * position) / (
            casing + frequency / relatedness + sentence / relatedness
        )
        out[s] = YakeFeatures(f, upper[s], acronym[s], casing, position, frequency, relatedness, sentence, score)
    return out


def _sentence_start(toks, i: int) -> bool:
    return toks[i - 1].sentence_index != toks[i].sentence_index


def yake_extract(doc: Document, n: int | None, *, max_len: int = 4, window: int = 1) -> RankedKeyphraseList:
    """YAKE phrase score ``prod S(t) / (tf(kw) * (1 + sum S(t)))``, emitted negated so higher is better."""
    candidates = extract_candidates(doc, max_len)
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    feats = yake_term_features(doc, window)
    scores = {}
    for c in candidates:
        term_scores = [feats[s].score for s in c.stems]
        raw = math.prod(term_scores) / (c.frequency * (1.0 + math.fsum(term_scores)))
        scores[c.key] = -raw
    return rank_candidates(candidates, scores, n, doc.id)


def stat_extract(
    doc: Document,
    variant: ExtractorId,
    n: int | None,
    corpus: Sequence[Document] = (),
    **params,
) -> RankedKeyphraseList:
    if variant is ExtractorId.YAKE:
        return yake_extract(doc, n, **params)
    if variant is ExtractorId.KPMINER:
        return kpminer_extract(doc, corpus, n, **params)
    raise ValueError(f"{variant} is not a statistical extractor")
