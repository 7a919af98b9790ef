import numpy as np
import pytest

from lsaca.retrieval import (
    Metric, Retriever, euclidean_rank_key, rank, rank_order, score, score_matrix, write_trec_run,
)


def test_metric_directions():
    assert Metric.EUCLIDEAN.ascending
    assert not Metric.DOT.ascending and not Metric.COSINE.ascending
    assert Metric.parse("cosine") is Metric.COSINE
    with pytest.raises(ValueError):
        Metric.parse("manhattan")


def test_scores_against_definitions(rng):
    Q, D = rng.normal(size=(3, 4)), rng.normal(size=(7, 4))
    np.testing.assert_allclose(score_matrix(Q, D, "EUCLIDEAN"),
                               np.linalg.norm(Q[:, None] - D[None], axis=2))
    np.testing.assert_allclose(score_matrix(Q, D, "DOT"), Q @ D.T)
    cos = (Q @ D.T) / np.linalg.norm(Q, axis=1)[:, None] / np.linalg.norm(D, axis=1)
    np.testing.assert_allclose(score_matrix(Q, D, "COSINE"), cos)


def test_cosine_zero_vector_scores_zero():
    s = score([0.0, 0.0], [[1.0, 0.0], [0.0, 0.0]], "COSINE")
    np.testing.assert_array_equal(s, [0.0, 0.0])


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        score_matrix(np.ones((1, 2)), np.ones((3, 3)), "DOT")


def test_ties_break_by_index():
    np.testing.assert_array_equal(rank_order(np.array([1.0, 0.5, 1.0, 0.5]), "EUCLIDEAN"),
                                  [1, 3, 0, 2])
    np.testing.assert_array_equal(rank_order(np.array([1.0, 0.5, 1.0, 0.5]), "DOT"),
                                  [0, 2, 1, 3])


def test_rank_order_matches_stable_sort(rng):
    S = rng.integers(0, 4, size=(50, 30)).astype(float)
    S[::2] += rng.normal(size=(25, 30))
    for metric in Metric:
        key = S if metric.ascending else -S
        np.testing.assert_array_equal(rank_order(S, metric), np.argsort(key, axis=1, kind="stable"))


def test_euclidean_key_orders_like_distance(rng):
    Q, D = rng.normal(size=(5, 3)), rng.normal(size=(40, 3))
    np.testing.assert_array_equal(rank_order(euclidean_rank_key(Q, D), "EUCLIDEAN"),
                                  rank_order(score_matrix(Q, D, "EUCLIDEAN"), "EUCLIDEAN"))


def test_rank_builds_ranked_list():
    rl = rank([0.2, 0.9, 0.5], "DOT", ["a", "b", "a"], "a", doc_ids=["x", "y", "z"], query_id="q1")
    assert rl.doc_ids == ("y", "z", "x")
    assert rl.relevant == (False, True, True)
    assert rl.n_relevant == 2 and len(rl) == 3


def test_rank_rejects_nan():
    with pytest.raises(ValueError):
        rank([0.1, np.nan], "DOT", ["a", "b"], "a")


def test_retriever(rng):
    D = rng.normal(size=(10, 2))
    r = Retriever("EUCLIDEAN").fit(D, list("aabbccddee"))
    scores, idx = r.kneighbors(D[[3]], n_neighbors=3)
    assert idx[0, 0] == 3 and scores[0, 0] == 0.0
    rl = r.rank(D[3], query_category="b")
    assert rl.doc_ids[0] == "3" and rl.relevant[0]


def test_trec_run(tmp_path):
    rl = rank([0.2, 0.9], "DOT", ["a", "b"], "a", doc_ids=["x", "y"], query_id="q")
    p = write_trec_run([rl], tmp_path / "run.txt", run_name="lsa", depth=1)
    assert p.read_text() == "q y 1 0.9 lsa\n"
