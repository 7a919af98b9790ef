import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone

from lsaca.corpus import Vocabulary
from lsaca.weighting import (
    Scheme, TermWeighting, WeightingError, apply_weighting, fit_weighting, restrict_to_vocabulary,
)


def test_raw_is_identity(F):
    np.testing.assert_array_equal(TermWeighting("RAW").fit_transform(F), F)


def test_nrowl1_rows_sum_to_one(F):
    A = TermWeighting("NROWL1").fit_transform(F)
    np.testing.assert_allclose(A.sum(axis=1), 1.0, atol=1e-15)
    np.testing.assert_allclose(A, F / F.sum(axis=1, keepdims=True), atol=1e-15)


def test_nrowl2_unit_rows(F):
    A = TermWeighting("NROWL2").fit_transform(F)
    np.testing.assert_allclose(np.linalg.norm(A, axis=1), 1.0, atol=1e-15)


def test_tfidf_global_weights(F):
    w = TermWeighting("TFIDF").fit(F)
    df = (F > 0).sum(axis=0)
    expected = 1 + np.log2(6 / df)
    np.testing.assert_allclose(w.global_weights_, expected, atol=1e-15)
    # jaguar occurs in every document: weight exactly 1
    assert w.global_weights_[3] == 1.0
    np.testing.assert_allclose(w.transform(F), F * expected, atol=1e-14)


def test_sparse_and_dense_agree(F):
    for scheme in Scheme:
        w = TermWeighting(scheme.value).fit(F)
        dense = w.transform(F)
        sparse = w.transform(sp.csr_matrix(F))
        assert sp.issparse(sparse)
        np.testing.assert_array_equal(sparse.toarray(), dense)


@pytest.mark.parametrize("scheme", [s.value for s in Scheme])
def test_query_weighting_bit_identical(F, scheme):
    w = TermWeighting(scheme).fit(F)
    A = w.transform(F)
    for i in range(F.shape[0]):
        q = w.transform(F[i])
        assert q.ndim == 1
        assert np.array_equal(q, A[i])


def test_zero_row_rejected_by_row_normalization(F):
    X = F.copy()
    X[2] = 0
    with pytest.raises(WeightingError):
        TermWeighting("NROWL1").fit(F).transform(X)


def test_tfidf_zero_df_rejected(F):
    X = F.copy()
    X[:, 1] = 0
    with pytest.raises(WeightingError):
        TermWeighting("TFIDF").fit(X)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        TermWeighting("BM25").fit(np.ones((2, 2)))


def test_estimator_protocol(F):
    w = TermWeighting("TFIDF")
    assert w.get_params() == {"scheme": "TFIDF"}
    c = clone(w).fit(F)
    assert c.n_features_in_ == 6
    with pytest.raises(ValueError):
        c.transform(np.ones((1, 5)))


def test_stats_json(F, toy):
    w = fit_weighting(toy, "TFIDF")
    recs = w.stats_records(toy.vocabulary.terms)
    assert recs[3]["term"] == "jaguar" and recs[3]["df"] == 6
    assert '"jaguar"' in w.to_json(toy.vocabulary.terms)
    wm = apply_weighting(w, toy)
    np.testing.assert_allclose(wm.toarray(), w.transform(F))


def test_restrict_to_vocabulary():
    vocab = Vocabulary(("a", "b", "c"), (1, 1, 1))
    vec, oov = restrict_to_vocabulary(["a", "x", "c", "a"], vocab)
    np.testing.assert_array_equal(vec, [2, 0, 1])
    assert oov == ["x"]
