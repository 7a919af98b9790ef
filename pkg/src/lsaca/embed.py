"""Truncated SVD, LSA and correspondence analysis embeddings with singular-value exponents."""

from __future__ import annotations

import copy
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import svds
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.extmath import randomized_svd
from sklearn.utils.validation import check_array, check_is_fitted

from .weighting import WeightedMatrix

SOLVERS = ("dense", "arpack", "randomized")


class EmbeddingError(ValueError):
    pass


class RankClampWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """``A ~= U diag(sigma) V^T`` restricted to the numerical rank."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.sigma.size)

    def truncate(self, k: int) -> "SvdFactors":
        return SvdFactors(self.U[:, :k], self.sigma[:k], self.V[:, :k])

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.sigma) @ self.V.T


def _dense(X) -> np.ndarray:
    if isinstance(X, WeightedMatrix):
        X = X.values
    if hasattr(X, "counts") and sp.issparse(getattr(X, "counts")):
        X = X.counts
    if sp.issparse(X):
        X = X.toarray()
    return check_array(X, dtype=np.float64, ensure_all_finite=True)


def _fix_signs(U: np.ndarray, V: np.ndarray) -> None:
    """Flip each pair so the largest-magnitude entry of U's column is positive."""
    if U.size == 0:
        return
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    U *= signs
    V *= signs


def svd(matrix, max_rank: int | None = None, rank_tol: float = 1e-10,
        solver: str = "dense", random_state: int = 0) -> SvdFactors:
    """Truncated SVD keeping singular values above ``rank_tol * sigma_1``.

    ``solver="dense"`` runs LAPACK on the full matrix and slices, so the
    rank-k factors are exactly the leading columns of the full decomposition.
    ``arpack`` and ``randomized`` compute only ``max_rank`` triplets.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    if max_rank is not None and max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    if isinstance(matrix, WeightedMatrix):
        matrix = matrix.values
    m, n = matrix.shape
    full = min(m, n)
    k = full if max_rank is None else min(max_rank, full)

    if solver == "dense" or (solver == "arpack" and k >= full - 1):
        A = _dense(matrix)
        try:
            U, s, Vt = np.linalg.svd(A, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise EmbeddingError(f"SVD did not converge: {exc}") from exc
    elif solver == "arpack":
        A = matrix.astype(np.float64) if sp.issparse(matrix) else _dense(matrix)
        v0 = np.random.default_rng(random_state).uniform(-1, 1, size=full)
        try:
            U, s, Vt = svds(A, k=k, v0=v0, solver="arpack")
        except Exception as exc:  # ArpackNoConvergence and friends
            raise EmbeddingError(f"SVD did not converge: {exc}") from exc
        order = np.argsort(-s, kind="stable")
        U, s, Vt = U[:, order], s[order], Vt[order]
    else:
        A = matrix.astype(np.float64) if sp.issparse(matrix) else _dense(matrix)
        U, s, Vt = randomized_svd(A, n_components=k, n_iter=7, random_state=random_state)

    if s.size == 0 or s[0] <= 0:
        raise EmbeddingError("cannot decompose an all-zero matrix")
    keep = int(np.sum(s > rank_tol * s[0]))
    keep = min(keep, k)
    U = np.ascontiguousarray(U[:, :keep])
    V = np.ascontiguousarray(Vt[:keep].T)
    _fix_signs(U, V)
    return SvdFactors(U, s[:keep].copy(), V)


def _power(sigma: np.ndarray, alpha: float) -> np.ndarray:
    if alpha <= 0 and np.any(sigma == 0):
        raise EmbeddingError("non-positive alpha with a zero singular value")
    return sigma ** alpha


def alpha_inertia(sigma, alpha: float) -> np.ndarray:
    """Share of ``sum(sigma ** (2 alpha))`` carried by each dimension."""
    w = _power(np.asarray(sigma, dtype=np.float64), 2 * alpha)
    return w / w.sum()


class _SvdEmbedding(TransformerMixin, BaseEstimator):
    method = "?"

    def __init__(self, n_components=2, alpha=1.0, solver="dense", rank_tol=1e-10,
                 random_state=0):
        self.n_components = n_components
        self.alpha = alpha
        self.solver = solver
        self.rank_tol = rank_tol
        self.random_state = random_state

    # subclasses return the matrix to decompose
    def _decomposed(self, A):
        raise NotImplementedError

    def _row_basis(self, factors):
        raise NotImplementedError

    def _col_basis(self, factors):
        raise NotImplementedError

    def _profiles(self, X):
        raise NotImplementedError

    def fit(self, X, y=None):
        if int(self.n_components) < 1:
            raise ValueError("n_components must be >= 1")
        target = self._decomposed(X)
        max_rank = None if self.solver == "dense" else int(self.n_components)
        factors = svd(target, max_rank=max_rank, rank_tol=self.rank_tol,
                      solver=self.solver, random_state=self.random_state)
        k = int(self.n_components)
        self.clamp_warning_ = None
        if k > factors.rank:
            self.clamp_warning_ = (f"{self.method}: n_components={k} exceeds numerical "
                                   f"rank {factors.rank}; clamped")
            warnings.warn(self.clamp_warning_, RankClampWarning, stacklevel=2)
            k = factors.rank
        self.rank_ = factors.rank
        self.n_components_ = k
        self.factors_ = factors.truncate(k)
        self.singular_values_ = self.factors_.sigma
        self.row_basis_ = self._row_basis(self.factors_)
        self.col_basis_ = self._col_basis(self.factors_)
        self.n_features_in_ = self.col_basis_.shape[0]
        return self

    def _scale(self, alpha):
        return _power(self.singular_values_, self.alpha if alpha is None else alpha)

    def document_coordinates(self, alpha=None) -> np.ndarray:
        """Training row coordinates ``basis * sigma ** alpha``."""
        check_is_fitted(self, "factors_")
        return self.row_basis_ * self._scale(alpha)

    def term_coordinates(self, alpha=None) -> np.ndarray:
        check_is_fitted(self, "factors_")
        return self.col_basis_ * self._scale(alpha)

    def fold_in(self, X) -> np.ndarray:
        """Project new rows into the standard (alpha = 1) space."""
        check_is_fitted(self, "factors_")
        X = _dense(np.atleast_2d(X) if np.ndim(X) == 1 and not sp.issparse(X) else X)
        if X.shape[1] != self.n_features_in_:
            raise EmbeddingError(
                f"dimension mismatch: query has {X.shape[1]} terms, model {self.n_features_in_}")
        return self._profiles(X) @ self.col_basis_

    def transform(self, X):
        """Fold-in coordinates rescaled by ``sigma ** (alpha - 1)``.

        The rescaling puts queries in the same space as
        :meth:`document_coordinates`, so a training row folded back in lands
        on its own coordinates for every alpha.
        """
        alpha = self.alpha
        return self.fold_in(X) * _power(self.singular_values_, alpha - 1.0)

    def fit_transform(self, X, y=None):
        return self.fit(X).document_coordinates()

    def set_alpha(self, alpha) -> "_SvdEmbedding":
        """Fitted copy using a different singular-value exponent."""
        check_is_fitted(self, "factors_")
        _power(self.singular_values_, alpha)
        other = copy.copy(self)
        other.alpha = alpha
        return other

    def alpha_inertia(self, alpha=None) -> np.ndarray:
        check_is_fitted(self, "factors_")
        return alpha_inertia(self.singular_values_, self.alpha if alpha is None else alpha)


class LSA(_SvdEmbedding):
    """Latent semantic analysis: truncated SVD of the (weighted) matrix.

    Document coordinates are ``U_k diag(sigma_k) ** alpha``; a query row ``d``
    folds in as ``d V_k`` before the alpha rescaling.
    """

    method = "LSA"

    def _decomposed(self, X):
        if isinstance(X, WeightedMatrix):
            X = X.values
        return X if sp.issparse(X) and self.solver != "dense" else _dense(X)

    def _row_basis(self, factors):
        return factors.U

    def _col_basis(self, factors):
        return factors.V

    def _profiles(self, X):
        return X


class CA(_SvdEmbedding):
    """Correspondence analysis of a non-negative (possibly weighted) table.

    Decomposes the standardized residuals
    ``D_r^{-1/2} (P - r c^T) D_c^{-1/2}``. Row coordinates are
    ``D_r^{-1/2} U_k diag(sigma_k) ** alpha`` and column coordinates
    ``D_c^{-1/2} V_k diag(sigma_k) ** alpha``, so at alpha = 1 Euclidean
    distances between rows match chi-square distances between row profiles.
    A query row folds in at the weighted average ``(d / sum(d)) Gamma_k`` of
    the column standard coordinates.

    Attributes
    ----------
    row_masses_, col_masses_ : ndarray
    total_inertia_ : float
        Sum of squared standardized residuals (Pearson chi-square over the grand total).
    """

    method = "CA"

    def _decomposed(self, X):
        S, r, c = standardized_residuals(X)
        self.row_masses_ = r
        self.col_masses_ = c
        self.total_inertia_ = float(np.sum(S * S))
        if self.total_inertia_ <= 1e-24:
            raise EmbeddingError("table has independent margins; total inertia is 0")
        return S

    def _row_basis(self, factors):
        return factors.U / np.sqrt(self.row_masses_)[:, None]

    def _col_basis(self, factors):
        return factors.V / np.sqrt(self.col_masses_)[:, None]

    def _profiles(self, X):
        totals = X.sum(axis=1)
        if np.any(totals <= 0):
            raise EmbeddingError("CA fold-in needs every query row to have a positive sum")
        return X / totals[:, None]


METHODS = {"LSA": LSA, "CA": CA}


def standardized_residuals(matrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(S, row_masses, col_masses)`` for a non-negative table."""
    A = _dense(matrix)
    if A.size and A.min() < 0:
        raise EmbeddingError("CA requires non-negative entries")
    P = A / A.sum()
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    if np.any(r <= 0) or np.any(c <= 0):
        raise EmbeddingError("CA requires positive row and column sums")
    S = (P - np.outer(r, c)) / np.sqrt(r)[:, None] / np.sqrt(c)[None, :]
    return S, r, c


def fit_lsa(matrix, k: int, **kwargs) -> LSA:
    return LSA(n_components=k, **kwargs).fit(matrix)


def fit_ca(matrix, k: int, **kwargs) -> CA:
    return CA(n_components=k, **kwargs).fit(matrix)


def set_alpha(embedding: _SvdEmbedding, alpha: float) -> _SvdEmbedding:
    return embedding.set_alpha(alpha)


def project_query(embedding: _SvdEmbedding, query_row) -> np.ndarray:
    """Coordinates (1 x k) of one weighted query row."""
    row = np.asarray(query_row, dtype=np.float64).reshape(1, -1)
    if not np.any(row):
        raise EmbeddingError("cannot project an all-zero query")
    return embedding.transform(row)


def term_coordinates(embedding: _SvdEmbedding) -> np.ndarray:
    return embedding.term_coordinates()


def chi2_distance(matrix, i: int, l: int) -> float:
    """Chi-square distance between the profiles of rows ``i`` and ``l``."""
    A = _dense(matrix)
    m = A.shape[0]
    for idx in (i, l):
        if not 0 <= idx < m:
            raise IndexError(f"row index {idx} out of bounds for {m} rows")
    P = A / A.sum()
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    if r[i] <= 0 or r[l] <= 0:
        raise EmbeddingError("chi-square distance needs positive row sums")
    nz = c > 0
    diff = P[i, nz] / r[i] - P[l, nz] / r[l]
    return float(np.sqrt(np.sum(diff * diff / c[nz])))


# -- persistence -------------------------------------------------------------

def save_embedding(embedding: _SvdEmbedding, path, extra: dict | None = None) -> Path:
    """Write ``<path>.npz`` with the factors and a ``<path>.json`` sidecar."""
    check_is_fitted(embedding, "factors_")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arrays = {
        "U": embedding.factors_.U,
        "sigma": embedding.factors_.sigma,
        "V": embedding.factors_.V,
    }
    if isinstance(embedding, CA):
        arrays["row_masses"] = embedding.row_masses_
        arrays["col_masses"] = embedding.col_masses_
    np.savez(path.with_suffix(".npz"), **arrays)
    meta = {
        "method": embedding.method,
        "params": embedding.get_params(),
        "n_components": embedding.n_components_,
        "rank": embedding.rank_,
        "clamp_warning": embedding.clamp_warning_,
        "shapes": {k: list(v.shape) for k, v in arrays.items()},
    }
    if isinstance(embedding, CA):
        meta["total_inertia"] = embedding.total_inertia_
    meta.update(extra or {})
    path.with_suffix(".json").write_text(json.dumps(meta, indent=1, sort_keys=True),
                                         encoding="utf-8")
    return path


def load_embedding(path) -> tuple[_SvdEmbedding, dict]:
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    data = np.load(path.with_suffix(".npz"))
    est = METHODS[meta["method"]](**meta["params"])
    factors = SvdFactors(data["U"], data["sigma"], data["V"])
    if isinstance(est, CA):
        est.row_masses_ = data["row_masses"]
        est.col_masses_ = data["col_masses"]
        est.total_inertia_ = meta.get("total_inertia")
    est.factors_ = factors
    est.singular_values_ = factors.sigma
    est.rank_ = meta["rank"]
    est.n_components_ = meta["n_components"]
    est.clamp_warning_ = meta.get("clamp_warning")
    est.row_basis_ = est._row_basis(factors)
    est.col_basis_ = est._col_basis(factors)
    est.n_features_in_ = est.col_basis_.shape[0]
    return est, meta


__all__ = [
    "SvdFactors", "EmbeddingError", "RankClampWarning", "svd", "alpha_inertia",
    "LSA", "CA", "METHODS", "standardized_residuals", "fit_lsa", "fit_ca", "set_alpha", "project_query",
    "term_coordinates", "chi2_distance", "save_embedding", "load_embedding",
]
