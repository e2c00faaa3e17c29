"""Multi-document extraction: Concat and Merge modes, containment merging and the
query-salience RAKE baseline."""

from __future__ import annotations

import enum
import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .candidates import first_occurrence, occurs_in
from .errors import EmptyDocument, MisalignedLists
from .extractors import ExtractorConfig, ExtractorId, Keyphrase, RankedKeyphraseList, extract
from .extractors.graph import cosine, tf_vector
from .extractors.rake import rake_extract
from .text import Document, DocumentSet, document_frequency, tokenize

DEFAULT_N_PER_DOC = 20
CONCAT_SEPARATOR = "\n\n"


class Mode(str, enum.Enum):
    CONCAT = "concat"
    MERGE = "merge"
    BAYATMAKOU = "bayatmakou"


@dataclass(frozen=True)
class TopicKeyphrases:
    topic_id: str
    items: tuple[Keyphrase, ...]
    mode: Mode

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def keys(self) -> list[str]:
        return [item.key for item in self.items]


def _sort_items(items: Iterable[Keyphrase], docs: Sequence[Document]) -> list[Keyphrase]:
    """Score descending, then earliest occurrence in the topic, then key."""
    far = (len(docs), 0)

    def order(item: Keyphrase):
        return (-item.score, first_occurrence(item.key, docs) or far, item.key)

    return sorted(items, key=order)


def containment_merge_report(
    items: Sequence[Keyphrase],
) -> tuple[list[Keyphrase], list[tuple[Keyphrase, Keyphrase]]]:
    """Containment merge returning ``(kept, [(absorbing, dropped), ...])``.

    A phrase is dropped when another phrase contains it ignoring order and is
    either longer, or equally long and ranked earlier.  The relation is
    transitive, so the survivors are exactly the phrases that no preferred
    phrase contains and the fixpoint does not depend on scan order.  Each
    dropped phrase is paired with the highest-ranked survivor containing it.
    """
    bags = [Counter(item.key.split()) for item in items]
    sizes = [sum(b.values()) for b in bags]

    def beats(j: int, i: int) -> bool:
        if sizes[j] != sizes[i]:
            return sizes[j] > sizes[i]
        return j < i

    def contains(j: int, i: int) -> bool:
        big, small = bags[j], bags[i]
        return all(big[s] >= c for s, c in small.items())

    n = len(items)
    alive = [
        not any(j != i and beats(j, i) and contains(j, i) for j in range(n))
        for i in range(n)
    ]
    kept = [items[i] for i in range(n) if alive[i]]
    pairs = []
    for i in range(n):
        if alive[i]:
            continue
        absorber = next(j for j in range(n) if alive[j] and beats(j, i) and contains(j, i))
        pairs.append((items[absorber], items[i]))
    return kept, pairs


def containment_merge(items: Sequence[Keyphrase]) -> list[Keyphrase]:
    """Collapse phrase pairs related by order-free containment, keeping rank order."""
    return containment_merge_report(items)[0]


def _check_alignment(lists: Sequence[RankedKeyphraseList], ds: DocumentSet) -> dict[str, RankedKeyphraseList]:
    by_id = {}
    for lst in lists:
        if lst.source_id in by_id:
            raise MisalignedLists(f"two lists for document {lst.source_id!r}")
        by_id[lst.source_id] = lst
    doc_ids = [d.id for d in ds.documents]
    if set(by_id) != set(doc_ids):
        missing = sorted(set(doc_ids) - set(by_id))
        extra = sorted(set(by_id) - set(doc_ids))
        raise MisalignedLists(f"topic {ds.topic_id}: missing lists {missing}, unknown lists {extra}")
    return by_id


def df_phrase_score(key: str, docs: Sequence[Document]) -> float:
    """Mean document frequency of the phrase's stems (duplicates counted)."""
    return statistics.fmean(document_frequency(s, docs) for s in key.split())


def merge_lists(lists: Sequence[RankedKeyphraseList], ds: DocumentSet, n: int | None) -> TopicKeyphrases:
    """Unify per-document lists, rescore by stem df, containment-merge and truncate."""
    by_id = _check_alignment(lists, ds)
    docs = ds.documents
    seen: dict[str, str] = {}
    for doc in docs:
        for item in by_id[doc.id]:
            seen.setdefault(item.key, item.surface)
    scored = [
        Keyphrase(surface, key, df_phrase_score(key, docs))
        for key, surface in seen.items()
        if occurs_in(key, docs)
    ]
    merged = containment_merge(_sort_items(scored, docs))
    if n is not None:
        merged = merged[:n]
    return TopicKeyphrases(ds.topic_id, tuple(merged), Mode.MERGE)


def merge_extract(
    extractor: ExtractorId | str,
    ds: DocumentSet,
    n_per_doc: int = DEFAULT_N_PER_DOC,
    n: int | None = None,
    config: ExtractorConfig | None = None,
) -> TopicKeyphrases:
    """Run the extractor on each document separately, then :func:`merge_lists`."""
    if n_per_doc < 1:
        raise ValueError("n_per_doc must be >= 1")
    lists = [extract(extractor, doc, n_per_doc, context=ds.documents, config=config) for doc in ds.documents]
    return merge_lists(lists, ds, n)


def concat_document(ds: DocumentSet) -> Document:
    text = CONCAT_SEPARATOR.join(doc.raw_text for doc in ds.documents)
    return tokenize(text, ds.topic_id)


def concat_extract(
    extractor: ExtractorId | str,
    ds: DocumentSet,
    n: int | None,
    config: ExtractorConfig | None = None,
) -> TopicKeyphrases:
    """Extract once from all documents joined with paragraph breaks."""
    eid = extractor if isinstance(extractor, ExtractorId) else ExtractorId.parse(extractor)
    if eid is ExtractorId.COLLABRANK:
        raise ValueError("COLLABRANK has no Concat mode: it needs per-document collaborators")
    if not ds.documents:
        raise EmptyDocument(f"topic {ds.topic_id} has no documents")
    pseudo = ds.documents[0] if len(ds.documents) == 1 else concat_document(ds)
    ranked = extract(eid, pseudo, n, context=ds.documents, config=config)
    return TopicKeyphrases(ds.topic_id, ranked.items, Mode.CONCAT)


def salience(doc: Document, query: Document | None) -> float:
    return 1.0 if query is None else cosine(tf_vector(doc), tf_vector(query))


def bayatmakou_extract(
    ds: DocumentSet,
    query: str | None,
    n: int | None,
    config: ExtractorConfig | None = None,
) -> TopicKeyphrases:
    """Query-weighted RAKE over each document, rescored and unified across the topic.

    A phrase from document d scores ``salience(d) * sum over its stems of
    (tf(stem, d) + cooc(stem))`` where ``cooc`` counts the other words the
    stem shares a kept phrase with.  Repeated keys keep their best score.
    """
    max_words = (config or ExtractorConfig()).rake_max_words
    query_doc = tokenize(query, "query") if query and query.strip() else None
    best: dict[str, Keyphrase] = {}
    for doc in ds.documents:
        kept = rake_extract(doc, None, max_words)
        tf = Counter(doc.stems)
        cooc: Counter = Counter()
        for item in kept:
            stems = item.key.split()
            for s in stems:
                cooc[s] += len(stems) - 1
        weight = salience(doc, query_doc)
        for item in kept:
            score = weight * math.fsum(tf[s] + cooc[s] for s in item.key.split())
            if item.key not in best or score > best[item.key].score:
                best[item.key] = Keyphrase(item.surface, item.key, score)
    ranked = _sort_items(best.values(), ds.documents)
    if n is not None:
        ranked = ranked[:n]
    return TopicKeyphrases(ds.topic_id, tuple(ranked), Mode.BAYATMAKOU)
