"""Topic-clustering rankers: TopicRank and MultipartiteRank."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .. import kernels
from ..candidates import CandidatePhrase, extract_candidates
from ..errors import EmptyCandidateSpace
from ..text import Document
from .base import ExtractorId, GraphParams, RankedKeyphraseList, rank_candidates

DEFAULT_SIMILARITY = 0.25


def _stem_id_matrix(candidates: Sequence[CandidatePhrase]) -> np.ndarray:
    vocab: dict[str, int] = {}
    sets = [sorted({vocab.setdefault(s, len(vocab)) for s in c.stems}) for c in candidates]
    width = max((len(s) for s in sets), default=1)
    ids = np.full((len(candidates), width), -1, dtype=np.int64)
    for i, s in enumerate(sets):
        ids[i, : len(s)] = s
    return ids


def cluster_candidates(
    candidates: Sequence[CandidatePhrase], min_similarity: float = DEFAULT_SIMILARITY
) -> np.ndarray:
    """Average-linkage clusters over stem-set Jaccard similarity.

    Clusters keep merging while their average similarity is at least
    ``min_similarity``.  Returns one label per candidate.
    """
    n = len(candidates)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    dist = kernels.jaccard_distances(_stem_id_matrix(candidates))
    threshold = 1.0 - min_similarity
    merges = kernels.average_linkage(dist, threshold)
    return kernels.cut_tree(merges, n, np.inf)


def _representative(members: Sequence[CandidatePhrase]) -> CandidatePhrase:
    # Earliest first occurrence; among sub-spans starting there, the longest.
    return min(members, key=lambda c: (c.first_position, -c.length, c.key))


def _occurrence_arrays(candidates: Sequence[CandidatePhrase], groups: np.ndarray):
    positions, owners = [], []
    for i, cand in enumerate(candidates):
        for _, pos, _ in cand.occurrences:
            positions.append(pos)
            owners.append(groups[i])
    return np.array(positions, dtype=np.int64), np.array(owners, dtype=np.int64)


def _dense_to_csr(W: np.ndarray):
    src, dst = np.nonzero(W)
    indptr = np.zeros(W.shape[0] + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int64), W[src, dst]


def topic_graph(candidates: Sequence[CandidatePhrase], labels: np.ndarray) -> np.ndarray:
    """Complete topic graph weighted by summed reciprocal distances between occurrences."""
    n_topics = int(labels.max()) + 1 if labels.size else 0
    pos, owner = _occurrence_arrays(candidates, labels)
    W = kernels.inverse_distance_sums(pos, owner, n_topics)
    np.fill_diagonal(W, 0.0)
    return W


def multipartite_graph(
    candidates: Sequence[CandidatePhrase], labels: np.ndarray, alpha: float = 1.1
) -> np.ndarray:
    """Directed candidate graph without intra-topic edges, with incoming edges of
    each topic's first-occurring candidate boosted."""
    n = len(candidates)
    pos, owner = _occurrence_arrays(candidates, np.arange(n))
    W = kernels.inverse_distance_sums(pos, owner, n)
    same_topic = labels[:, None] == labels[None, :]
    W[same_topic] = 0.0
    base = W.copy()
    for topic in np.unique(labels):
        members = np.flatnonzero(labels == topic)
        if members.size < 2:
            continue
        first = min(members, key=lambda i: (candidates[i].first_position, -candidates[i].length, candidates[i].key))
        others = members[members != first]
        boosters = base[others, :].sum(axis=0)
        boost = alpha * math.exp(1.0 / (1 + candidates[first].first_position))
        W[:, first] += boosters * boost
    return W


def cluster_rank_extract(
    doc: Document,
    variant: ExtractorId,
    n: int | None,
    params: GraphParams | None = None,
    *,
    max_len: int = 4,
    min_similarity: float = DEFAULT_SIMILARITY,
    alpha: float = 1.1,
) -> RankedKeyphraseList:
    params = params or GraphParams(window=1)
    candidates = extract_candidates(doc, max_len)
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    labels = cluster_candidates(candidates, min_similarity)
    if variant is ExtractorId.TOPICRANK:
        W = topic_graph(candidates, labels)
        ranks, _ = kernels.pagerank(
            *_dense_to_csr(W), np.full(W.shape[0], 1.0 / W.shape[0]),
            params.damping, params.tolerance, params.max_iterations,
        )
        scores = {}
        for topic in range(W.shape[0]):
            members = [candidates[i] for i in np.flatnonzero(labels == topic)]
            scores[_representative(members).key] = float(ranks[topic])
        return rank_candidates(candidates, scores, n, doc.id)
    if variant is ExtractorId.MULTIPARTITERANK:
        W = multipartite_graph(candidates, labels, alpha)
        ranks, _ = kernels.pagerank(
            *_dense_to_csr(W), np.full(len(candidates), 1.0 / len(candidates)),
            params.damping, params.tolerance, params.max_iterations,
        )
        scores = {c.key: float(r) for c, r in zip(candidates, ranks)}
        return rank_candidates(candidates, scores, n, doc.id)
    raise ValueError(f"{variant} is not a cluster-based extractor")
