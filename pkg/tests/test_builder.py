import random

import pytest
from hypothesis import given, strategies as st

from mdke.builder import (
    BuilderInput,
    build_topic_gold,
    phrase_score,
    read_topic_dir,
    report_to_json,
    word_score_with_summaries,
)
from mdke.candidates import phrase_key
from mdke.errors import MissingSummaries, ParseError, ValidationError
from mdke.text import tokenize_set

from oracles import brute_gold_pipeline, contains


def _topic(docs_with, n_docs, summaries_with, n_summaries, word="steroid"):
    docs = [(f"d{i}", f"{word} use" if i < docs_with else "other text") for i in range(n_docs)]
    sums = [(f"s{i}", f"{word} story" if i < summaries_with else "other story") for i in range(n_summaries)]
    return tokenize_set("t", docs, sums)


def test_word_score_example():
    ds = _topic(9, 10, 4, 4)
    assert word_score_with_summaries("steroid", ds) == 6.5


def test_phrase_score_averages_words():
    docs = [(f"d{i}", "drug testing" if i < 3 else "testing") for i in range(5)]
    ds = tokenize_set("t", docs, [("s0", "drug"), ("s1", "testing")])
    # drug: (3 + 1) / 2, test: (5 + 1) / 2
    assert phrase_score("drug testing", ds) == pytest.approx(2.5)
    assert phrase_score("drug drug testing", ds) == pytest.approx((2 + 2 + 3) / 3)


def test_missing_summaries():
    ds = tokenize_set("t", [("d0", "alpha")])
    with pytest.raises(MissingSummaries):
        word_score_with_summaries("alpha", ds)
    with pytest.raises(MissingSummaries):
        BuilderInput(ds, {"d0": ["alpha"]})


def test_missing_per_document_gold():
    ds = tokenize_set("t", [("d0", "alpha"), ("d1", "beta")], [("s", "alpha")])
    with pytest.raises(ValidationError):
        BuilderInput(ds, {"d0": ["alpha"]})


def test_build_example():
    ds = tokenize_set(
        "t",
        [("d0", "The routine training flight crashed."), ("d1", "A routine training flight is common.")],
        [("s0", "Training flight crashed.")],
    )
    inp = BuilderInput(ds, {"d0": ["routine training", "ghost term", "Routine Training"], "d1": ["routine training flight", "crash"]})
    rep = build_topic_gold(inp)
    assert [k.surface for k in rep.ranked_list] == ["routine training flight", "crash"]
    assert rep.removed_not_in_docs == ("ghost term",)
    assert rep.merged_pairs == (("routine training flight", "routine training"),)
    assert rep.duplicates_removed == 1
    assert rep.scores["crash"] == pytest.approx((1 + 1) / 2)
    js = report_to_json(rep)
    assert js["ranked"][0] == {"rank": 1, "surface": "routine training flight", "key": "routin train flight", "score": rep.scores["routin train flight"]}


def test_builder_matches_brute_pipeline():
    rng = random.Random(9)
    vocab = ["storm", "damage", "power", "line", "flood", "crew", "the"]
    for _ in range(40):
        docs = [(f"d{i}", " ".join(rng.choice(vocab) for _ in range(rng.randint(2, 12)))) for i in range(rng.randint(1, 4))]
        sums = [(f"s{i}", " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 8)))) for i in range(rng.randint(1, 3))]
        ds = tokenize_set("t", docs, sums)
        gold = {}
        flat = []
        for d in ds.documents:
            phrases = [" ".join(rng.choice(vocab[:-1] + ["ghost"]) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(0, 5))]
            gold[d.id] = phrases
            flat.extend(phrase_key(p) for p in phrases)
        rep = build_topic_gold(BuilderInput(ds, gold))
        want = brute_gold_pipeline(flat, [list(d.stems) for d in ds.documents], [list(s.stems) for s in ds.reference_summaries])
        assert [(k.key, k.score) for k in rep.ranked_list] == [(k, pytest.approx(s, abs=1e-12)) for k, s in want]


phrases = st.lists(st.lists(st.sampled_from(["storm", "damage", "power", "line", "ghost"]), min_size=1, max_size=3).map(" ".join), max_size=8)


@given(phrases, phrases)
def test_every_input_is_accounted_for(g0, g1):
    ds = tokenize_set("t", [("d0", "storm damage to power"), ("d1", "power line storm")], [("s", "storm")])
    rep = build_topic_gold(BuilderInput(ds, {"d0": g0, "d1": g1}))
    unique = {phrase_key(p) for p in g0 + g1}
    kept = set(rep.ranked_list.keys())
    removed = {phrase_key(p) for p in rep.removed_not_in_docs}
    dropped = {phrase_key(b) for _, b in rep.merged_pairs}
    assert kept | removed | dropped == unique
    assert not (kept & removed) and not (kept & dropped) and not (removed & dropped)
    assert rep.duplicates_removed == len(g0) + len(g1) - len(unique)
    for a in kept:
        for b in kept:
            assert a == b or not contains(a, b)


def test_removing_summary_never_raises_scores():
    docs = [("d0", "storm damage. power line"), ("d1", "storm surge")]
    sums = [("s0", "storm damage"), ("s1", "power outage")]
    gold = {"d0": ["storm damage", "power line"], "d1": ["storm surge"]}
    full = build_topic_gold(BuilderInput(tokenize_set("t", docs, sums), gold)).scores
    fewer = build_topic_gold(BuilderInput(tokenize_set("t", docs, sums[:1]), gold)).scores
    assert all(fewer[k] <= full[k] for k in full)


def test_truncation():
    ds = tokenize_set("t", [("d0", "alpha beta gamma delta")], [("s", "alpha")])
    rep = build_topic_gold(BuilderInput(ds, {"d0": ["alpha", "beta", "gamma"]}), n=2)
    assert rep.ranked_list.keys() == ["alpha", "beta"]


def test_read_topic_dir(tmp_path):
    root = tmp_path / "d99"
    for sub in ("docs", "summaries", "gold"):
        (root / sub).mkdir(parents=True)
    (root / "docs" / "a.txt").write_text("Storm damage left lines down.")
    (root / "docs" / "b.txt").write_text("Power lines were repaired.")
    (root / "summaries" / "s1.txt").write_text("Storm damage and power lines.")
    (root / "gold" / "a.txt").write_text("storm damage\n\nlines\n")
    (root / "gold" / "b.txt").write_text("power lines\n")
    inp = read_topic_dir(root)
    assert inp.ds.topic_id == "d99"
    assert inp.per_doc_gold == {"a": ["storm damage", "lines"], "b": ["power lines"]}
    assert build_topic_gold(inp).ranked_list.keys() == ["power line", "storm damag"]


def test_read_topic_dir_errors(tmp_path):
    with pytest.raises(ParseError):
        read_topic_dir(tmp_path / "absent")
    (tmp_path / "docs").mkdir()
    with pytest.raises(ParseError):
        read_topic_dir(tmp_path)
