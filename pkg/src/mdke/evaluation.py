"""Ranking metrics against gold lists with substitute clusters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .dataset import BenchmarkDataset, GoldEntry, TopicGold, truncate_gold
from .errors import EmptyGold, MissingTopicPrediction
from .multidoc import TopicKeyphrases

DEFAULT_K = (1, 5, 10, 20)


class MatchPolicy(str, enum.Enum):
    EXACT_STEM = "exact"
    CLUSTER_AWARE = "cluster"


def match(pred_key: str, entry: GoldEntry, policy: MatchPolicy) -> bool:
    if policy is MatchPolicy.EXACT_STEM:
        return pred_key == entry.preferred_key
    return pred_key in entry.keys


def _pred_keys(pred: TopicKeyphrases | Sequence[str]) -> list[str]:
    if isinstance(pred, TopicKeyphrases):
        return pred.keys()
    return list(pred)


def _require_gold(gold: TopicGold) -> None:
    if not gold.entries:
        raise EmptyGold(f"topic {gold.topic_id} has no gold entries")


def _gold_index(gold: TopicGold, policy: MatchPolicy) -> dict[str, list[int]]:
    index: dict[str, list[int]] = {}
    for i, entry in enumerate(gold.entries):
        keys = (entry.preferred_key,) if policy is MatchPolicy.EXACT_STEM else set(entry.keys)
        for key in keys:
            index.setdefault(key, []).append(i)
    return index


def match_ranks(keys: Sequence[str], gold: TopicGold, policy: MatchPolicy) -> list[bool]:
    """Per-prediction hit flags under one-to-one greedy matching in rank order.

    Each prediction takes the best-ranked gold entry it matches that no
    earlier prediction has taken.
    """
    index = _gold_index(gold, policy)
    used: set[int] = set()
    flags = []
    for key in keys:
        free = next((i for i in index.get(key, ()) if i not in used), None)
        if free is not None:
            used.add(free)
        flags.append(free is not None)
    return flags


def _prf(hits: int, n_pred: int, n_gold: int) -> tuple[float, float, float]:
    p = hits / n_pred if n_pred else 0.0
    r = hits / n_gold if n_gold else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def f1_at_k(
    pred: TopicKeyphrases | Sequence[str], gold: TopicGold, k: int, policy: MatchPolicy = MatchPolicy.EXACT_STEM
) -> tuple[float, float, float]:
    """Precision, recall and F1 of the top-k predictions; precision divides by min(k, |pred|)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _require_gold(gold)
    keys = _pred_keys(pred)[:k]
    return _prf(sum(match_ranks(keys, gold, policy)), len(keys), len(gold.entries))


def unigram_f1_at_k(pred: TopicKeyphrases | Sequence[str], gold: TopicGold, k: int) -> tuple[float, float, float]:
    """Set precision, recall and F1 over the stems of the top-k predictions and of the preferred variants."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _require_gold(gold)
    pred_stems = {s for key in _pred_keys(pred)[:k] for s in key.split()}
    gold_stems = {s for e in gold.entries for s in e.preferred_key.split()}
    return _prf(len(pred_stems & gold_stems), len(pred_stems), len(gold_stems))


def mrr(pred: TopicKeyphrases | Sequence[str], gold: TopicGold, policy: MatchPolicy = MatchPolicy.EXACT_STEM) -> float:
    _require_gold(gold)
    for rank, hit in enumerate(match_ranks(_pred_keys(pred), gold, policy), start=1):
        if hit:
            return 1.0 / rank
    return 0.0


def average_precision(
    pred: TopicKeyphrases | Sequence[str], gold: TopicGold, policy: MatchPolicy = MatchPolicy.EXACT_STEM
) -> float:
    _require_gold(gold)
    hits = 0
    total = []
    for rank, hit in enumerate(match_ranks(_pred_keys(pred), gold, policy), start=1):
        if hit:
            hits += 1
            total.append(hits / rank)
    return math.fsum(total) / len(gold.entries)


def avg_keyphrase_length(preds: Iterable[TopicKeyphrases | Sequence[str]]) -> float:
    """Mean number of words per predicted phrase, pooled over topics."""
    lengths = [len(key.split()) for pred in preds for key in _pred_keys(pred)]
    if not lengths:
        return 0.0
    return math.fsum(lengths) / len(lengths)


@dataclass(frozen=True)
class EvalReport:
    per_topic: Mapping[str, Mapping[str, float]]
    aggregate: Mapping[str, float]
    k_values: tuple[int, ...]


def metric_names(k_values: Sequence[int]) -> list[str]:
    names = []
    for prefix in ("P", "R", "F1"):
        names += [f"{prefix}@{k}" for k in k_values]
    names += [f"uF1@{k}" for k in k_values]
    return names + ["MRR", "MAP"]


def topic_metrics(
    pred: TopicKeyphrases | Sequence[str], gold: TopicGold, k_values: Sequence[int], policy: MatchPolicy
) -> dict[str, float]:
    out: dict[str, float] = {}
    for k in k_values:
        p, r, f = f1_at_k(pred, gold, k, policy)
        out[f"P@{k}"], out[f"R@{k}"], out[f"F1@{k}"] = p, r, f
        out[f"uF1@{k}"] = unigram_f1_at_k(pred, gold, k)[2]
    out["MRR"] = mrr(pred, gold, policy)
    out["MAP"] = average_precision(pred, gold, policy)
    return {name: out[name] for name in metric_names(k_values)}


def evaluate(
    preds: Mapping[str, TopicKeyphrases | Sequence[str]],
    ds: BenchmarkDataset,
    k_values: Sequence[int] = DEFAULT_K,
    policy: MatchPolicy = MatchPolicy.EXACT_STEM,
    trunc: int | None = None,
) -> EvalReport:
    """Per-topic metrics and their unweighted mean over topics (in dataset order)."""
    missing = [tid for tid in ds.topics if tid not in preds]
    if missing:
        raise MissingTopicPrediction(f"no predictions for topics {missing}")
    per_topic = {}
    for tid, topic in ds.topics.items():
        gold = topic.gold if trunc is None else truncate_gold(topic.gold, trunc)
        per_topic[tid] = topic_metrics(preds[tid], gold, k_values, policy)
    names = metric_names(k_values)
    aggregate = {
        m: math.fsum(v[m] for v in per_topic.values()) / len(per_topic) if per_topic else 0.0
        for m in names
    }
    return EvalReport(per_topic, aggregate, tuple(k_values))
