import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsaca.evaluation import (
    average_precision, batch_interpolated_ap, interpolated_ap, make_splits,
    mean_average_precision, parse_regime, pr_curve, pseudo_precisions, write_per_query_csv,
)
from lsaca.retrieval import rank

from oracles import ap_oracle, pseudo_precisions_oracle

rankings = st.lists(st.booleans(), min_size=1, max_size=12)


def test_perfect_and_worst_rankings():
    assert average_precision([True, True, False, False]) == 1.0
    # one relevant document at the bottom of 4
    assert average_precision([False, False, False, True]) == pytest.approx(0.25)


def test_hand_example():
    # relevant at ranks 1 and 3 of 4: precision 1 up to recall .5, 2/3 after
    ap = average_precision([True, False, True, False])
    assert ap == pytest.approx((6 * 1 + 5 * 2 / 3) / 11)


def test_no_relevant_documents_scores_zero():
    assert average_precision([False, False]) == 0.0


def test_pr_curve_from_ranked_list():
    rl = rank([0.9, 0.1, 0.5], "DOT", ["a", "b", "a"], "a")
    c = pr_curve(rl)
    assert c.points == [(0.5, 1.0), (1.0, 1.0), (1.0, 2 / 3)]


def test_recall_threshold_compared_exactly():
    # |C| = 10: recall 0.3 is reached at exactly 3 hits despite 3/10 != 0.3 in floats
    flags = [True] * 3 + [False] * 7 + [True] * 7
    p = pseudo_precisions(pr_curve(flags))
    assert p[3] == 1.0


@settings(max_examples=300, deadline=None)
@given(rankings)
def test_pseudo_precisions_match_oracle_exactly(flags):
    ours = pseudo_precisions(pr_curve(flags))
    exact = pseudo_precisions_oracle(flags)
    assert [float(x) for x in exact] == ours.tolist()
    total = 0.0
    for x in exact:
        total += float(x)
    assert interpolated_ap(pr_curve(flags)) == total / 11
    assert interpolated_ap(pr_curve(flags)) == pytest.approx(float(ap_oracle(flags)), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.lists(rankings.filter(lambda r: len(r) == 9), min_size=1, max_size=8))
def test_batch_matches_scalar(rows):
    batch = batch_interpolated_ap(np.array(rows))
    assert batch.tolist() == [average_precision(r) for r in rows]


def test_batch_large_random(rng):
    rel = rng.random((200, 150)) < 0.2
    rel[5] = False
    np.testing.assert_array_equal(batch_interpolated_ap(rel),
                                  [average_precision(r) for r in rel])


def test_map_and_csv(tmp_path):
    res = mean_average_precision([1.0, 0.5, 0.0], query_ids=["a", "b", "c"], folds=[0, 0, 1])
    assert res.map == 0.5 and res.n_queries == 3
    text = write_per_query_csv(res, tmp_path / "pq.csv").read_text()
    assert text.splitlines() == ["fold,query_id,ap", "0,a,1.0", "0,b,0.5", "1,c,0.0"]
    with pytest.raises(ValueError):
        mean_average_precision([])


def test_parse_regime():
    assert parse_regime("kfold:10") == ("KFOLD", {"k": 10})
    assert parse_regime("fixed") == ("FIXED", {"train_frac": 0.8})
    with pytest.raises(ValueError):
        parse_regime("bootstrap")


def _check_partition(plan, m):
    seen = np.concatenate([val for _, val in plan.folds])
    np.testing.assert_array_equal(np.sort(seen), np.arange(m))
    for train, val in plan.folds:
        assert not set(train) & set(val)
        assert len(train) + len(val) == m


def test_kfold_stratified_partition():
    labels = ["a"] * 23 + ["b"] * 11 + ["c"] * 6
    plan = make_splits(labels, "kfold:5", seed=0)
    _check_partition(plan, 40)
    sizes = [len(v) for _, v in plan.folds]
    assert max(sizes) - min(sizes) <= 1
    for _, val in plan.folds:
        n_a = sum(labels[i] == "a" for i in val)
        assert n_a in (4, 5)
    again = make_splits(labels, "kfold:5", seed=0)
    for (t1, v1), (t2, v2) in zip(plan.folds, again.folds):
        np.testing.assert_array_equal(v1, v2)


def test_loocv():
    plan = make_splits(list("aabbc"), "loocv")
    assert len(plan) == 5
    _check_partition(plan, 5)


def test_fixed_split_seeded():
    a = make_splits(["x"] * 10, "fixed:0.8", seed=4)
    b = make_splits(["x"] * 10, "fixed:0.8", seed=4)
    assert len(a.folds[0][0]) == 8
    np.testing.assert_array_equal(a.folds[0][1], b.folds[0][1])


def test_predefined_split():
    plan = make_splits(list("abab"), "predefined", sides=["train", "test", "train", "test"])
    np.testing.assert_array_equal(plan.folds[0][1], [1, 3])
    with pytest.raises(ValueError):
        make_splits(list("ab"), "predefined")


def test_split_errors():
    with pytest.raises(ValueError):
        make_splits([], "kfold:5")
    with pytest.raises(ValueError):
        make_splits(list("ab"), "kfold:5")
