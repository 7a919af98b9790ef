import warnings

import numpy as np
import pytest
from sklearn.base import clone

from lsaca.embed import (
    CA, LSA, EmbeddingError, RankClampWarning, alpha_inertia, chi2_distance, load_embedding,
    project_query, save_embedding, standardized_residuals, svd,
)

ALPHAS = (-0.5, 0.0, 0.5, 1.0, 1.5)
TOY_SIGMA = (8.425, 3.261, 0.988, 0.574, 0.272)

# reference alpha-inertia rows of the toy LSA-RAW table, dims 1..5
TOY_INERTIA = {
    -0.5: (0.017, 0.045, 0.148, 0.254, 0.536),
    0.0: (0.2, 0.2, 0.2, 0.2, 0.2),
    0.5: (0.623, 0.241, 0.073, 0.042, 0.020),
    1.0: (0.855, 0.128, 0.012, 0.004, 0.001),
    1.5: (0.943, 0.055, 0.002, 0.000, 0.000),
}


def ca_oracle(F):
    """Principal coordinates from the eigendecomposition of S^T S (no SVD)."""
    P = F / F.sum()
    r, c = P.sum(1), P.sum(0)
    S = (P - np.outer(r, c)) / np.sqrt(np.outer(r, c))
    evals, V = np.linalg.eigh(S.T @ S)
    order = np.argsort(evals)[::-1]
    evals, V = evals[order], V[:, order]
    keep = evals > 1e-12 * evals[0]
    sigma = np.sqrt(evals[keep])
    V = V[:, keep]
    U = S @ V / sigma
    return sigma, U / np.sqrt(r)[:, None] * sigma, V / np.sqrt(c)[:, None] * sigma


def _same_up_to_sign(A, B, atol):
    signs = np.sign(np.sum(A * B, axis=0))
    np.testing.assert_allclose(A, B * signs, atol=atol)


def test_toy_singular_values(F):
    f = svd(F)
    assert f.rank == 5
    np.testing.assert_allclose(f.sigma, TOY_SIGMA, atol=1e-3)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_toy_alpha_inertia(F, alpha):
    np.testing.assert_allclose(alpha_inertia(svd(F).sigma, alpha), TOY_INERTIA[alpha], atol=1e-3)


def test_svd_orthonormal_and_reconstructs(F):
    f = svd(F)
    np.testing.assert_allclose(f.U.T @ f.U, np.eye(f.rank), atol=1e-12)
    np.testing.assert_allclose(f.V.T @ f.V, np.eye(f.rank), atol=1e-12)
    np.testing.assert_allclose(f.reconstruct(), F, atol=1e-12)


def test_svd_sign_convention(F):
    f = svd(F)
    idx = np.argmax(np.abs(f.U), axis=0)
    assert np.all(f.U[idx, np.arange(f.rank)] > 0)


def test_svd_all_zero_rejected():
    with pytest.raises(EmbeddingError):
        svd(np.zeros((3, 4)))


@pytest.mark.parametrize("solver", ["arpack", "randomized"])
def test_iterative_solvers_match_dense(small_corpus, solver):
    X = small_corpus.toarray().astype(float)
    dense = svd(X, max_rank=5)
    other = svd(X, max_rank=5, solver=solver)
    np.testing.assert_allclose(other.sigma, dense.sigma[:5], rtol=1e-6)
    _same_up_to_sign(other.U[:, :3], dense.U[:, :3], atol=1e-5)


def test_ca_matches_eigen_oracle(F):
    sigma, Phi, Gamma = ca_oracle(F)
    ca = CA(n_components=4).fit(F)
    np.testing.assert_allclose(ca.singular_values_, sigma, atol=1e-10)
    _same_up_to_sign(ca.document_coordinates(), Phi, atol=1e-10)
    _same_up_to_sign(ca.term_coordinates(), Gamma, atol=1e-10)


def test_ca_toy_frozen_coordinates(F):
    # frozen from ca_oracle (first dimension, k = 2)
    ca = CA(n_components=2).fit(F)
    docs = ca.document_coordinates()[:, 0]
    terms = ca.term_coordinates()[:, 0]
    s = np.sign(docs[4])
    np.testing.assert_allclose(s * docs, [-0.4776, -0.4895, -0.5094, 0.0098, 1.3944, 1.2947],
                               atol=1e-4)
    np.testing.assert_allclose(s * terms, [-0.502, -0.528, -0.505, 0.1306, 1.305, 1.448],
                               atol=1e-3)
    assert ca.rank_ == 4


def test_ca_residuals_and_inertia(F):
    S, r, c = standardized_residuals(F)
    N = F.sum()
    E = np.outer(F.sum(1), F.sum(0)) / N
    chi2 = ((F - E) ** 2 / E).sum()
    np.testing.assert_allclose((S ** 2).sum(), chi2 / N, rtol=1e-12)
    ca = CA(n_components=2).fit(F)
    np.testing.assert_allclose(ca.total_inertia_, chi2 / N, rtol=1e-12)
    np.testing.assert_allclose((CA(n_components=4).fit(F).singular_values_ ** 2).sum(),
                               chi2 / N, rtol=1e-10)


def test_ca_centroid_and_transition(F):
    ca = CA(n_components=4).fit(F)
    r, c = ca.row_masses_, ca.col_masses_
    Phi = ca.row_basis_
    Gamma = ca.col_basis_
    np.testing.assert_allclose(r @ Phi, 0, atol=1e-10)
    np.testing.assert_allclose(c @ Gamma, 0, atol=1e-10)
    P = F / F.sum()
    s = ca.singular_values_
    np.testing.assert_allclose(Phi * s, (P / r[:, None]) @ Gamma, atol=1e-10)
    np.testing.assert_allclose(Gamma * s, (P / c[None, :]).T @ Phi, atol=1e-10)


def test_chi2_distance_equals_full_rank_ca_distance(F):
    ca = CA(n_components=4).fit(F)
    X = ca.document_coordinates()
    for i in range(6):
        for l in range(6):
            np.testing.assert_allclose(np.linalg.norm(X[i] - X[l]), chi2_distance(F, i, l),
                                       atol=1e-10)
    # frozen value for the two car documents
    assert chi2_distance(F, 4, 5) == pytest.approx(0.5510932, abs=1e-7)
    with pytest.raises(IndexError):
        chi2_distance(F, 0, 6)


@pytest.mark.parametrize("cls", [LSA, CA])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_fold_in_identity(F, cls, alpha):
    est = cls(n_components=6, alpha=alpha)
    with pytest.warns(RankClampWarning):
        est.fit(F)
    np.testing.assert_allclose(est.transform(F), est.document_coordinates(), atol=1e-10)


@pytest.mark.parametrize("cls", [LSA, CA])
def test_alpha_consistency(F, cls):
    base = cls(n_components=3).fit(F)
    for a in ALPHAS:
        other = base.set_alpha(a)
        assert base.alpha == 1.0
        np.testing.assert_allclose(other.document_coordinates(),
                                   base.row_basis_ * base.singular_values_ ** a, atol=1e-12)
        np.testing.assert_allclose(other.document_coordinates(),
                                   cls(n_components=3, alpha=a).fit(F).document_coordinates(),
                                   atol=1e-12)


def test_ca_query_invariant_to_row_scaling(F):
    ca = CA(n_components=3).fit(F)
    q = F[3]
    np.testing.assert_allclose(project_query(ca, 7.5 * q), project_query(ca, q), atol=1e-12)


def test_lsa_query_scales_linearly(F):
    lsa = LSA(n_components=3).fit(F)
    np.testing.assert_allclose(project_query(lsa, 2 * F[0]), 2 * project_query(lsa, F[0]))


def test_zero_query_rejected(F):
    for cls in (LSA, CA):
        with pytest.raises(EmbeddingError):
            project_query(cls(n_components=2).fit(F), np.zeros(6))


def test_query_dimension_mismatch(F):
    with pytest.raises(EmbeddingError):
        LSA(n_components=2).fit(F).transform(np.ones((1, 5)))


def test_independent_margins_rejected():
    with pytest.raises(EmbeddingError):
        CA(n_components=1).fit(np.outer([1, 2, 3], [2, 1, 1]).astype(float))


def test_clamp_records_warning(F):
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        ca = CA(n_components=10).fit(F)
    assert ca.n_components_ == 4 and ca.clamp_warning_
    assert any(issubclass(w.category, RankClampWarning) for w in rec)


def test_estimator_params_and_clone(F):
    est = CA(n_components=3, alpha=0.5)
    p = est.get_params()
    assert p["n_components"] == 3 and p["alpha"] == 0.5
    fitted = clone(est).fit(F)
    assert fitted.fit_transform(F).shape == (6, 3)


@pytest.mark.parametrize("cls", [LSA, CA])
def test_save_load_roundtrip(tmp_path, F, cls):
    est = cls(n_components=3, alpha=0.5).fit(F)
    save_embedding(est, tmp_path / "model", {"note": "x"})
    back, meta = load_embedding(tmp_path / "model")
    assert meta["note"] == "x" and isinstance(back, cls)
    np.testing.assert_array_equal(back.document_coordinates(), est.document_coordinates())
    np.testing.assert_array_equal(back.transform(F), est.transform(F))
