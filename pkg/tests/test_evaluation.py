import random

import pytest
from hypothesis import given, strategies as st

from mdke.dataset import BenchmarkDataset, Topic, TopicGold, truncate_gold
from mdke.errors import EmptyGold, MissingTopicPrediction
from mdke.evaluation import (
    MatchPolicy,
    average_precision,
    avg_keyphrase_length,
    evaluate,
    f1_at_k,
    match,
    match_ranks,
    metric_names,
    mrr,
    unigram_f1_at_k,
)
from mdke.candidates import phrase_key
from mdke.text import tokenize_set

from oracles import brute_ap, brute_f1, brute_mrr, brute_unigram_f1

EXACT, CLUSTER = MatchPolicy.EXACT_STEM, MatchPolicy.CLUSTER_AWARE


def _keys(phrases):
    return [phrase_key(p) for p in phrases]


def test_d31_example(d31_gold):
    gold = truncate_gold(d31_gold, 20)
    p, r, f = f1_at_k(_keys(["drug testing", "world record", "foo bar"]), gold, 10)
    assert p == pytest.approx(2 / 3)
    assert r == pytest.approx(0.1)
    assert f == pytest.approx(0.1739, abs=1e-4)


def test_d31_cluster_variant(d31_gold):
    entry = d31_gold.entries[5]
    key = phrase_key("Canadian Olympic sprinter")
    assert match(key, entry, CLUSTER) and not match(key, entry, EXACT)
    assert f1_at_k([key], d31_gold, 1, CLUSTER)[0] == 1.0
    assert f1_at_k([key], d31_gold, 1, EXACT)[0] == 0.0


def test_variant_counts_once(d31_gold):
    keys = _keys(["Ben Johnson", "Canadian Ben Johnson", "Sprinter Ben Johnson"])
    assert match_ranks(keys, d31_gold, CLUSTER) == [True, False, False]


def test_metric_examples():
    gold = TopicGold.from_variants("t", [["alpha"], ["beta"], ["gamma"], ["delta"]])
    pred = ["zeta", "beta", "eta", "alpha"]
    assert mrr(pred, gold) == 0.5
    assert average_precision(pred, gold) == pytest.approx((1 / 2 + 2 / 4) / 4)
    assert mrr(["zeta"], gold) == 0.0


def test_short_list_precision_uses_list_length():
    gold = TopicGold.from_variants("t", [["alpha"], ["beta"]])
    assert f1_at_k(["alpha"], gold, 10) == pytest.approx((1.0, 0.5, 2 / 3))
    assert f1_at_k([], gold, 5) == (0.0, 0.0, 0.0)


def test_unigram_f1_example():
    gold = TopicGold.from_variants("t", [["drug testing"], ["world record", "record"]])
    p, r, f = unigram_f1_at_k(["drug", "record holder"], gold, 5)
    # predicted {drug, record, holder}; gold {drug, test, world, record}
    assert (p, r) == pytest.approx((2 / 3, 2 / 4))


def test_empty_gold_and_bad_k():
    empty = TopicGold("t", ())
    for fn in (lambda: f1_at_k(["a"], empty, 1), lambda: unigram_f1_at_k(["a"], empty, 1), lambda: mrr(["a"], empty), lambda: average_precision(["a"], empty)):
        with pytest.raises(EmptyGold):
            fn()
    with pytest.raises(ValueError):
        f1_at_k(["a"], TopicGold.from_variants("t", [["a"]]), 0)


def test_avg_keyphrase_length():
    assert avg_keyphrase_length([["a b", "c"], ["d e f"]]) == 2.0
    assert avg_keyphrase_length([]) == 0.0


# ---------------------------------------------------------------- oracles

WORDS = ["a", "b", "c", "d", "e", "f", "g", "h"]


def _random_instance(rng):
    pool = list({" ".join(rng.sample(WORDS, rng.randint(1, 2))) for _ in range(30)})
    rng.shuffle(pool)
    n_gold = rng.randint(1, 8)
    gold, i = [], 0
    for _ in range(n_gold):
        size = rng.randint(1, 3)
        if i + size > len(pool):
            break
        gold.append(pool[i : i + size])
        i += size
    pred = [rng.choice(pool) for _ in range(rng.randint(0, 12))]
    pred = list(dict.fromkeys(pred)) if rng.random() < 0.7 else pred
    return pred, gold


def test_metrics_match_brute_oracles():
    rng = random.Random(17)
    for _ in range(500):
        pred, variants = _random_instance(rng)
        gold = TopicGold.from_variants("t", variants)
        for policy, aware in ((EXACT, False), (CLUSTER, True)):
            for k in (1, 3, 5, 10):
                assert f1_at_k(pred, gold, k, policy) == pytest.approx(brute_f1(pred, variants, k, aware), abs=1e-12)
            assert mrr(pred, gold, policy) == pytest.approx(brute_mrr(pred, variants, aware), abs=1e-12)
            assert average_precision(pred, gold, policy) == pytest.approx(brute_ap(pred, variants, aware), abs=1e-12)
        for k in (1, 5):
            assert unigram_f1_at_k(pred, gold, k) == pytest.approx(brute_unigram_f1(pred, variants, k), abs=1e-12)


# ---------------------------------------------------------------- properties

@st.composite
def instances(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return _random_instance(random.Random(seed))


@given(instances(), st.sampled_from([1, 2, 5, 10, 20]))
def test_cluster_never_below_exact(inst, k):
    pred, variants = inst
    gold = TopicGold.from_variants("t", variants)
    assert f1_at_k(pred, gold, k, CLUSTER)[2] >= f1_at_k(pred, gold, k, EXACT)[2]
    assert mrr(pred, gold, CLUSTER) >= mrr(pred, gold, EXACT)


@given(instances())
def test_recall_monotone_in_k(inst):
    pred, variants = inst
    gold = TopicGold.from_variants("t", variants)
    for policy in MatchPolicy:
        recalls = [f1_at_k(pred, gold, k, policy)[1] for k in range(1, 15)]
        assert recalls == sorted(recalls)
        assert all(0.0 <= r <= 1.0 for r in recalls)


@given(instances(), st.randoms(use_true_random=False))
def test_cluster_score_ignores_variant_order(inst, rnd):
    pred, variants = inst
    shuffled = [rnd.sample(v, len(v)) for v in variants]
    a = TopicGold.from_variants("t", variants)
    b = TopicGold.from_variants("t", shuffled)
    assert f1_at_k(pred, a, 10, CLUSTER) == f1_at_k(pred, b, 10, CLUSTER)
    assert average_precision(pred, a, CLUSTER) == average_precision(pred, b, CLUSTER)


@given(instances())
def test_values_in_unit_interval(inst):
    pred, variants = inst
    gold = TopicGold.from_variants("t", variants)
    for policy in MatchPolicy:
        p, r, f = f1_at_k(pred, gold, 5, policy)
        assert 0 <= p <= 1 and 0 <= r <= 1 and 0 <= f <= 1
        assert min(p, r) - 1e-12 <= f <= max(p, r) + 1e-12
        assert 0 <= average_precision(pred, gold, policy) <= 1


# ---------------------------------------------------------------- evaluate

def _dataset():
    topics = {}
    for tid, text, gold in (("x", "storm damage and power lines", [["storm damage"], ["power lines"]]), ("y", "flood water rose", [["flood water"]])):
        topics[tid] = Topic(tokenize_set(tid, [("d", text)]), TopicGold.from_variants(tid, gold))
    return BenchmarkDataset("toy", topics)


def test_evaluate_aggregates_mean_over_topics():
    ds = _dataset()
    rep = evaluate({"x": _keys(["storm damage"]), "y": _keys(["rose"])}, ds, (1, 5))
    assert list(rep.per_topic) == ["x", "y"]
    assert rep.per_topic["x"]["R@5"] == 0.5
    assert rep.per_topic["y"]["P@1"] == 0.0
    assert rep.aggregate["P@1"] == 0.5
    assert rep.aggregate["MRR"] == 0.5
    assert list(rep.aggregate) == metric_names((1, 5))
    assert metric_names((1, 5)) == ["P@1", "P@5", "R@1", "R@5", "F1@1", "F1@5", "uF1@1", "uF1@5", "MRR", "MAP"]


def test_evaluate_truncates_gold():
    ds = _dataset()
    rep = evaluate({"x": _keys(["storm damage"]), "y": []}, ds, (5,), trunc=1)
    assert rep.per_topic["x"]["R@5"] == 1.0


def test_evaluate_missing_topic():
    with pytest.raises(MissingTopicPrediction):
        evaluate({"x": []}, _dataset())
