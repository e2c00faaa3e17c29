"""Word-graph rankers: TextRank, SingleRank, PositionRank and CollabRank."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import kernels
from ..candidates import extract_candidates
from ..errors import EmptyCandidateSpace
from ..text import Document
from .base import GraphParams, RankedKeyphraseList, rank_candidates


@dataclass(frozen=True)
class WordGraph:
    nodes: tuple[str, ...]
    edges: dict[tuple[int, int], float]  # undirected, keyed (low, high)

    def csr(self):
        """Symmetric CSR arrays ``(indptr, indices, weights)``."""
        n = len(self.nodes)
        if self.edges:
            pairs = np.array(list(self.edges.keys()), dtype=np.int64)
            w = np.array(list(self.edges.values()), dtype=np.float64)
            src = np.concatenate([pairs[:, 0], pairs[:, 1]])
            dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
            w = np.concatenate([w, w])
        else:
            src = dst = np.empty(0, dtype=np.int64)
            w = np.empty(0)
        order = np.lexsort((dst, src))
        src, dst, w = src[order], dst[order], w[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        return np.cumsum(indptr), dst, w


def _content_arrays(doc: Document, node_index: dict[str, int]):
    toks = doc.tokens
    nodes = np.fromiter(
        (-1 if t.is_stopword else node_index.setdefault(t.stem, len(node_index)) for t in toks),
        dtype=np.int64,
        count=len(toks),
    )
    sentences = np.fromiter((t.sentence_index for t in toks), dtype=np.int64, count=len(toks))
    return nodes, sentences


def pair_counts(doc: Document, node_index: dict[str, int], window: int) -> Counter:
    """Co-occurrence counts of distinct content stems within ``window`` tokens of one sentence."""
    nodes, sentences = _content_arrays(doc, node_index)
    a, b = kernels.cooccurrence_pairs(nodes, sentences, window)
    counts: Counter = Counter()
    if a.size:
        pairs, freq = np.unique(np.stack([a, b], axis=1), axis=0, return_counts=True)
        for (x, y), f in zip(pairs.tolist(), freq.tolist()):
            counts[(x, y)] = f
    return counts


def build_word_graph(
    weighted_docs: Sequence[tuple[Document, float]], window: int, weighted: bool = True
) -> WordGraph:
    """Union co-occurrence graph; each document's counts are scaled by its weight.

    Nodes are numbered in order of first appearance.  Unweighted graphs use
    unit weight for every co-occurring pair.
    """
    node_index: dict[str, int] = {}
    edges: dict[tuple[int, int], float] = {}
    for doc, weight in weighted_docs:
        for pair, count in sorted(pair_counts(doc, node_index, window).items()):
            edges[pair] = edges.get(pair, 0.0) + weight * count
    if not weighted:
        edges = {pair: 1.0 for pair in edges}
    nodes = tuple(sorted(node_index, key=node_index.__getitem__))
    return WordGraph(nodes, edges)


def position_teleport(doc: Document, nodes: Sequence[str]) -> np.ndarray:
    """Teleport mass proportional to the summed inverse (1-based) positions of each stem."""
    index = {s: i for i, s in enumerate(nodes)}
    p = np.zeros(len(nodes))
    for tok in doc.tokens:
        if not tok.is_stopword and tok.stem in index:
            p[index[tok.stem]] += 1.0 / (tok.position + 1)
    total = p.sum()
    if total <= 0:
        return np.full(len(nodes), 1.0 / len(nodes))
    return p / total


def rank_words(graph: WordGraph, params: GraphParams, teleport=None) -> tuple[dict[str, float], int]:
    """PageRank scores per stem and the number of iterations used."""
    n = len(graph.nodes)
    if n == 0:
        raise EmptyCandidateSpace("word graph has no nodes")
    if teleport is None:
        teleport = np.full(n, 1.0 / n)
    indptr, indices, weights = graph.csr()
    ranks, iters = kernels.pagerank(
        indptr, indices, weights, teleport, params.damping, params.tolerance, params.max_iterations
    )
    return dict(zip(graph.nodes, ranks.tolist())), int(iters)


def _score_candidates(doc: Document, ranks: dict[str, float], n: int | None, max_len: int):
    candidates = extract_candidates(doc, max_len)
    if not candidates:
        raise EmptyCandidateSpace(f"document {doc.id!r} has no candidates")
    scores = {c.key: math.fsum(ranks.get(s, 0.0) for s in c.stems) for c in candidates}
    return rank_candidates(candidates, scores, n, doc.id)


def graph_rank_extract(
    doc: Document, params: GraphParams, n: int | None, max_len: int = 4
) -> RankedKeyphraseList:
    """Score each candidate by the sum of its stems' PageRank on the document word graph."""
    graph = build_word_graph([(doc, 1.0)], params.window, params.weighted)
    teleport = position_teleport(doc, graph.nodes) if params.position_bias and graph.nodes else None
    ranks, _ = rank_words(graph, params, teleport)
    return _score_candidates(doc, ranks, n, max_len)


def tf_vector(doc: Document) -> Counter:
    return Counter(t.stem for t in doc.tokens if not t.is_stopword)


def cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = math.fsum(v * b[k] for k, v in a.items() if k in b)
    na = math.sqrt(math.fsum(v * v for v in a.values()))
    nb = math.sqrt(math.fsum(v * v for v in b.values()))
    return dot / (na * nb)


def collaboration_graph(
    doc: Document, collaborators: Sequence[Document], params: GraphParams
) -> WordGraph:
    """The document's own graph plus collaborator co-occurrences scaled by cosine similarity.

    Collaborators are visited in id order so the result does not depend on
    the order they were supplied in.
    """
    own = tf_vector(doc)
    weighted = [(doc, 1.0)]
    for other in sorted(collaborators, key=lambda d: d.id):
        if other is doc:
            continue
        sim = cosine(own, tf_vector(other))
        if sim > 0:
            weighted.append((other, sim))
    return build_word_graph(weighted, params.window, params.weighted)


def collabrank_extract(
    doc: Document,
    collaborators: Sequence[Document],
    n: int | None,
    params: GraphParams | None = None,
    max_len: int = 4,
) -> RankedKeyphraseList:
    params = params or GraphParams(window=10)
    graph = collaboration_graph(doc, collaborators, params)
    ranks, _ = rank_words(graph, params)
    return _score_candidates(doc, ranks, n, max_len)
