"""Single-document keyphrase extractors and the common dispatch entry point."""

from __future__ import annotations

from typing import Sequence

from ..errors import MissingContext
from ..text import Document
from .base import (
    DEFAULT_CONFIG,
    ExtractorConfig,
    ExtractorId,
    GraphParams,
    Keyphrase,
    RankedKeyphraseList,
)
from .cluster import cluster_rank_extract
from .graph import collabrank_extract, graph_rank_extract
from .rake import rake_extract
from .statistical import (
    kpminer_extract,
    stat_extract,
    stem_document_frequencies,
    tfidf_extract,
    yake_extract,
    yake_term_features,
)


def extract(
    extractor: ExtractorId | str,
    doc: Document,
    n: int | None,
    context: Sequence[Document] | None = None,
    config: ExtractorConfig | None = None,
) -> RankedKeyphraseList:
    """Run one extractor on ``doc`` and return at most ``n`` phrases.

    ``context`` is the topic's document set (``doc`` may or may not be part
    of it).  CollabRank requires it and uses every member with a different id
    as a collaborator.  Tf-Idf and KP-Miner use it as their document-frequency
    corpus, falling back to ``doc`` alone.
    """
    eid = extractor if isinstance(extractor, ExtractorId) else ExtractorId.parse(extractor)
    if n is not None and n < 1:
        raise ValueError("n must be >= 1")
    cfg = config or DEFAULT_CONFIG
    max_len = cfg.max_phrase_len
    corpus = list(context) if context else [doc]

    if eid is ExtractorId.TFIDF:
        return tfidf_extract(doc, stem_document_frequencies(corpus), len(corpus), n, max_len)
    if eid is ExtractorId.KPMINER:
        return kpminer_extract(
            doc, corpus, n, max_len=max_len, lasf=cfg.kpminer_lasf,
            cutoff=cfg.kpminer_cutoff, alpha=cfg.kpminer_alpha, sigma=cfg.kpminer_sigma,
        )
    if eid is ExtractorId.YAKE:
        return yake_extract(doc, n, max_len=max_len, window=cfg.yake_window)
    if eid is ExtractorId.TEXTRANK:
        return graph_rank_extract(doc, cfg.graph_params(cfg.textrank_window, weighted=False), n, max_len)
    if eid is ExtractorId.SINGLERANK:
        return graph_rank_extract(doc, cfg.graph_params(cfg.singlerank_window), n, max_len)
    if eid is ExtractorId.POSITIONRANK:
        params = cfg.graph_params(cfg.positionrank_window, position_bias=True)
        return graph_rank_extract(doc, params, n, max_len)
    if eid in (ExtractorId.TOPICRANK, ExtractorId.MULTIPARTITERANK):
        return cluster_rank_extract(
            doc, eid, n, cfg.graph_params(1), max_len=max_len,
            min_similarity=cfg.cluster_similarity, alpha=cfg.multipartite_alpha,
        )
    if eid is ExtractorId.RAKE:
        return rake_extract(doc, n, cfg.rake_max_words)
    if eid is ExtractorId.COLLABRANK:
        if context is None:
            raise MissingContext("COLLABRANK needs the other topic documents as context")
        collaborators = [d for d in context if d.id != doc.id]
        return collabrank_extract(doc, collaborators, n, cfg.graph_params(cfg.singlerank_window), max_len)
    raise AssertionError(eid)


__all__ = [
    "DEFAULT_CONFIG",
    "ExtractorConfig",
    "ExtractorId",
    "GraphParams",
    "Keyphrase",
    "RankedKeyphraseList",
    "cluster_rank_extract",
    "collabrank_extract",
    "extract",
    "graph_rank_extract",
    "kpminer_extract",
    "rake_extract",
    "stat_extract",
    "tfidf_extract",
    "yake_extract",
    "yake_term_features",
]
