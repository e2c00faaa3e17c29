"""Topic gold-list construction from per-document gold lists and reference summaries."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .candidates import CandidatePhrase, occurs_in, phrase_key
from .errors import EmptyPhrase, MissingSummaries, ParseError, ValidationError
from .extractors import Keyphrase
from .multidoc import Mode, TopicKeyphrases, _sort_items, containment_merge_report
from .text import DocumentSet, document_frequency, tokenize_set


def _require_summaries(ds: DocumentSet) -> None:
    if not ds.reference_summaries:
        raise MissingSummaries(f"topic {ds.topic_id} has no reference summaries")


def word_score_with_summaries(stem: str, ds: DocumentSet) -> float:
    """Average of the stem's df over the documents and over the summaries."""
    _require_summaries(ds)
    return (document_frequency(stem, ds.documents) + document_frequency(stem, ds.reference_summaries)) / 2


def phrase_score(phrase: CandidatePhrase | str, ds: DocumentSet) -> float:
    """Mean word score over the phrase's stem tokens, duplicates counted."""
    _require_summaries(ds)
    key = phrase_key(phrase)
    return statistics.fmean(word_score_with_summaries(s, ds) for s in key.split())


@dataclass(frozen=True)
class BuilderInput:
    ds: DocumentSet
    per_doc_gold: Mapping[str, Sequence[str]]

    def __post_init__(self):
        _require_summaries(self.ds)
        missing = [d.id for d in self.ds.documents if d.id not in self.per_doc_gold]
        if missing:
            raise ValidationError(f"topic {self.ds.topic_id}: no gold list for documents {missing}")


@dataclass(frozen=True)
class BuilderReport:
    ranked_list: TopicKeyphrases
    removed_not_in_docs: tuple[str, ...]
    merged_pairs: tuple[tuple[str, str], ...]  # (kept surface, dropped surface)
    duplicates_removed: int = 0
    scores: Mapping[str, float] = field(default_factory=dict)


def build_topic_gold(inp: BuilderInput, n: int | None = None) -> BuilderReport:
    """Dedup, drop phrases absent from the documents, score, containment-merge, truncate.

    Per-document lists are read in document order; the first surface seen for
    a key is the one kept.
    """
    ds = inp.ds
    docs = ds.documents
    seen: dict[str, str] = {}
    total = 0
    for doc in docs:
        for surface in inp.per_doc_gold[doc.id]:
            total += 1
            try:
                key = phrase_key(surface)
            except EmptyPhrase:
                continue
            seen.setdefault(key, surface)
    removed = []
    scored = []
    for key, surface in seen.items():
        if not occurs_in(key, docs):
            removed.append(surface)
            continue
        scored.append(Keyphrase(surface, key, phrase_score(key, ds)))
    kept, pairs = containment_merge_report(_sort_items(scored, docs))
    truncated = kept if n is None else kept[:n]
    return BuilderReport(
        ranked_list=TopicKeyphrases(ds.topic_id, tuple(truncated), Mode.MERGE),
        removed_not_in_docs=tuple(removed),
        merged_pairs=tuple((a.surface, b.surface) for a, b in pairs),
        duplicates_removed=total - len(seen),
        scores={k.key: k.score for k in scored},
    )


def read_topic_dir(topic_dir: str | Path, lexicon=None) -> BuilderInput:
    """Load ``docs/*.txt``, ``summaries/*.txt`` and ``gold/<doc id>.txt`` (one phrase per line)."""
    root = Path(topic_dir)
    if not root.is_dir():
        raise ParseError(f"{root} is not a directory")

    def texts(sub: str) -> list[tuple[str, str]]:
        return [(p.stem, p.read_text(encoding="utf-8")) for p in sorted((root / sub).glob("*.txt"))]

    docs = texts("docs")
    if not docs:
        raise ParseError(f"{root}: no documents under docs/")
    ds = tokenize_set(root.name, docs, texts("summaries"), lexicon)
    gold = {
        doc_id: [line.strip() for line in text.splitlines() if line.strip()]
        for doc_id, text in texts("gold")
    }
    return BuilderInput(ds, gold)


def report_to_json(report: BuilderReport) -> dict:
    return {
        "topic_id": report.ranked_list.topic_id,
        "ranked": [
            {"rank": i, "surface": k.surface, "key": k.key, "score": k.score}
            for i, k in enumerate(report.ranked_list.items, start=1)
        ],
        "removed_not_in_docs": list(report.removed_not_in_docs),
        "merged_pairs": [{"kept": a, "dropped": b} for a, b in report.merged_pairs],
        "duplicates_removed": report.duplicates_removed,
    }
