"""Benchmark datasets: gold lists with substitute clusters, loading, saving and statistics."""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import jsonschema

from .candidates import occurs_in, phrase_key
from .schemas import load_schema
from .errors import EmptyDocument, EmptyPhrase, ParseError, ValidationError
from .text import DocumentSet, Lexicon, tokenize_set


@dataclass(frozen=True)
class GoldEntry:
    rank: int
    variants: tuple[str, ...]

    def __post_init__(self):
        if not self.variants:
            raise ValidationError(f"gold entry {self.rank} has no variants")

    @property
    def preferred(self) -> str:
        return self.variants[0]

    @cached_property
    def keys(self) -> tuple[str, ...]:
        return tuple(phrase_key(v) for v in self.variants)

    @property
    def preferred_key(self) -> str:
        return self.keys[0]


@dataclass(frozen=True)
class TopicGold:
    topic_id: str
    entries: tuple[GoldEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_variants(cls, topic_id: str, clusters: Sequence[Sequence[str]]) -> "TopicGold":
        return cls(topic_id, tuple(GoldEntry(i + 1, tuple(v)) for i, v in enumerate(clusters)))


@dataclass(frozen=True)
class Topic:
    docs: DocumentSet
    gold: TopicGold
    query: str | None = None


@dataclass(frozen=True)
class BenchmarkDataset:
    name: str
    topics: Mapping[str, Topic]

    def topic_ids(self) -> list[str]:
        return list(self.topics)


def validate_gold(gold: TopicGold, ds: DocumentSet, strict: bool = True) -> None:
    """Check gold invariants; with ``strict`` every variant must occur in the documents."""
    where = f"topic {gold.topic_id}"
    owner: dict[str, int] = {}
    for i, entry in enumerate(gold.entries):
        if entry.rank != i + 1:
            raise ValidationError(f"{where}: entry ranks must run 1..n, found {entry.rank} at {i + 1}")
        seen: set[str] = set()
        for variant in entry.variants:
            try:
                key = phrase_key(variant)
            except EmptyPhrase as exc:
                raise ValidationError(f"{where} entry {entry.rank}: variant {variant!r} has no words") from exc
            if key in seen:
                raise ValidationError(f"{where} entry {entry.rank}: duplicate variant key {key!r}")
            seen.add(key)
            if key in owner and owner[key] != entry.rank:
                raise ValidationError(
                    f"{where}: variant {variant!r} of entry {entry.rank} repeats entry {owner[key]}"
                )
            owner[key] = entry.rank
            if strict and not occurs_in(key, ds.documents):
                raise ValidationError(
                    f"{where} entry {entry.rank}: gold phrase {variant!r} does not occur in any document"
                )


def dataset_from_json(data: dict, strict: bool = True, lexicon: Lexicon | None = None) -> BenchmarkDataset:
    try:
        jsonschema.validate(data, load_schema("dataset"))
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path)
        raise ValidationError(f"dataset schema violation at /{loc}: {exc.message}") from exc
    topics: dict[str, Topic] = {}
    for t in data["topics"]:
        tid = t["topic_id"]
        if tid in topics:
            raise ValidationError(f"duplicate topic id {tid!r}")
        try:
            ds = tokenize_set(
                tid,
                [(d["id"], d["text"]) for d in t["documents"]],
                [(s["id"], s["text"]) for s in t.get("summaries", [])],
                lexicon,
            )
        except EmptyDocument as exc:
            raise ValidationError(f"topic {tid}: {exc}") from exc
        gold = TopicGold.from_variants(tid, [g["variants"] for g in t["gold"]])
        validate_gold(gold, ds, strict)
        topics[tid] = Topic(ds, gold, t.get("query"))
    return BenchmarkDataset(data["name"], topics)


def load_dataset(path: str | Path, strict: bool = True, lexicon: Lexicon | None = None) -> BenchmarkDataset:
    """Read and fully validate a dataset JSON file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return dataset_from_json(data, strict, lexicon)


def dataset_to_json(ds: BenchmarkDataset) -> dict:
    topics = []
    for tid, topic in ds.topics.items():
        entry = {
            "topic_id": tid,
            "documents": [{"id": d.id, "text": d.raw_text} for d in topic.docs.documents],
            "summaries": [{"id": s.id, "text": s.raw_text} for s in topic.docs.reference_summaries],
            "gold": [{"variants": list(g.variants)} for g in topic.gold.entries],
        }
        if topic.query is not None:
            entry["query"] = topic.query
        topics.append(entry)
    return {"name": ds.name, "topics": topics}


def save_dataset(ds: BenchmarkDataset, path: str | Path) -> None:
    text = json.dumps(dataset_to_json(ds), ensure_ascii=False, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def truncate_gold(gold: TopicGold, k: int) -> TopicGold:
    """The first ``k`` entries with their clusters intact."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return TopicGold(gold.topic_id, gold.entries[:k])


@dataclass(frozen=True)
class DatasetStats:
    n_topics: int
    avg_docs_per_topic: float
    std_docs_per_topic: float
    avg_keyphrases_per_topic: float
    std_keyphrases_per_topic: float
    avg_keyphrase_words: float
    std_keyphrase_words: float
    n_entries_with_cluster: int
    total_entries: int
    avg_cluster_size: float
    std_cluster_size: float


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 0.0
    return statistics.fmean(values), statistics.pstdev(values)


def dataset_stats(ds: BenchmarkDataset, trunc: int | None = None) -> DatasetStats:
    """Summary statistics over the (optionally truncated) gold lists.

    Word length is measured on preferred variants pooled over all entries;
    cluster size only over entries with two or more variants.  Standard
    deviations are population values.
    """
    golds = [t.gold if trunc is None else truncate_gold(t.gold, trunc) for t in ds.topics.values()]
    entries = [e for g in golds for e in g.entries]
    docs = _mean_std([len(t.docs.documents) for t in ds.topics.values()])
    kps = _mean_std([len(g.entries) for g in golds])
    words = _mean_std([len(e.preferred.split()) for e in entries])
    clustered = [len(e.variants) for e in entries if len(e.variants) > 1]
    sizes = _mean_std(clustered)
    return DatasetStats(
        n_topics=len(golds),
        avg_docs_per_topic=docs[0],
        std_docs_per_topic=docs[1],
        avg_keyphrases_per_topic=kps[0],
        std_keyphrases_per_topic=kps[1],
        avg_keyphrase_words=words[0],
        std_keyphrase_words=words[1],
        n_entries_with_cluster=len(clustered),
        total_entries=len(entries),
        avg_cluster_size=sizes[0],
        std_cluster_size=sizes[1],
    )
