"""Local/global/document weighting of count matrices (RAW, NROWL1, NROWL2, TFIDF)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .corpus import DocumentTermMatrix


class Scheme(str, Enum):
    RAW = "RAW"
    NROWL1 = "NROWL1"
    NROWL2 = "NROWL2"
    TFIDF = "TFIDF"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown weighting scheme {value!r}; "
                             f"expected one of {[s.value for s in cls]}") from None


class WeightingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightedMatrix:
    values: np.ndarray | sp.csr_matrix
    scheme: Scheme
    source: str | None = None

    @property
    def shape(self):
        return self.values.shape

    def toarray(self) -> np.ndarray:
        v = self.values
        return v.toarray() if sp.issparse(v) else np.asarray(v)


class TermWeighting(TransformerMixin, BaseEstimator):
    """Element weighting ``a_ij = L(i, j) * G(j) * N(i)`` with ``L = f_ij``.

    Parameters
    ----------
    scheme : {"RAW", "NROWL1", "NROWL2", "TFIDF"}
        ``RAW`` leaves counts unchanged, ``NROWL1``/``NROWL2`` divide each row
        by its L1/L2 norm, ``TFIDF`` multiplies column j by
        ``1 + log2(n_docs / df_j)`` with statistics frozen at fit time.

    Attributes
    ----------
    global_weights_ : ndarray of shape (n_terms,)
        ``G(j)``; all ones except under TFIDF.
    document_frequency_ : ndarray of shape (n_terms,)
    n_docs_ : int
    """

    def __init__(self, scheme="RAW"):
        self.scheme = scheme

    def fit(self, X, y=None):
        X = _as_counts(X)
        scheme = Scheme.parse(self.scheme)
        n_docs, n_terms = X.shape
        df = np.asarray((X > 0).sum(axis=0)).ravel().astype(np.int64)
        if scheme is Scheme.TFIDF:
            if np.any(df == 0):
                missing = np.flatnonzero(df == 0)[:5].tolist()
                raise WeightingError(f"TFIDF needs df_j >= 1; zero for columns {missing}")
            g = 1.0 + np.log2(n_docs / df)
        else:
            g = np.ones(n_terms)
        self.scheme_ = scheme
        self.n_docs_ = n_docs
        self.n_features_in_ = n_terms
        self.document_frequency_ = df
        self.global_weights_ = g
        return self

    def transform(self, X):
        check_is_fitted(self, "global_weights_")
        single = np.ndim(X) == 1
        X = _as_counts(np.atleast_2d(X) if single else X)
        if X.shape[1] != self.n_features_in_:
            raise WeightingError(
                f"column mismatch: got {X.shape[1]} terms, fitted on {self.n_features_in_}")
        dense_in = not sp.issparse(X)
        # one CSR code path for dense and sparse input keeps a row weighted on
        # its own bit-identical to the same row weighted inside a matrix
        A = sp.csr_matrix(X, dtype=np.float64, copy=True)
        A.sum_duplicates()
        A.sort_indices()
        scheme = self.scheme_
        if scheme is Scheme.TFIDF:
            A.data *= self.global_weights_[A.indices]
        elif scheme in (Scheme.NROWL1, Scheme.NROWL2):
            norms = _row_norms(A, scheme)
            if np.any(norms <= 0):
                bad = np.flatnonzero(norms <= 0)[:5].tolist()
                raise WeightingError(f"{scheme.value} undefined for all-zero rows {bad}")
            A.data *= np.repeat(1.0 / norms, np.diff(A.indptr))
        if dense_in:
            A = A.toarray()
        if single:
            return A[0]
        return A

    def stats_records(self, terms=None) -> list[dict]:
        """Per-term ``{"term", "df", "G"}`` records for run manifests."""
        check_is_fitted(self, "global_weights_")
        if terms is None:
            terms = [str(j) for j in range(self.n_features_in_)]
        return [{"term": t, "df": int(d), "G": float(g)}
                for t, d, g in zip(terms, self.document_frequency_, self.global_weights_)]

    def to_json(self, terms=None) -> str:
        return json.dumps({"scheme": self.scheme_.value, "n_docs": self.n_docs_,
                           "terms": self.stats_records(terms)})


def _row_norms(A: sp.csr_matrix, scheme: Scheme) -> np.ndarray:
    data = A.data if scheme is Scheme.NROWL1 else A.data * A.data
    lengths = np.diff(A.indptr)
    out = np.zeros(A.shape[0])
    nonempty = lengths > 0
    if data.size:
        sums = np.add.reduceat(data, A.indptr[:-1][nonempty])
        out[nonempty] = sums
    return out if scheme is Scheme.NROWL1 else np.sqrt(out)


def _as_counts(X):
    if isinstance(X, DocumentTermMatrix):
        X = X.counts
    if isinstance(X, WeightedMatrix):
        X = X.values
    X = check_array(X, accept_sparse="csr", dtype=None, ensure_all_finite=True)
    if (X.data if sp.issparse(X) else X).size and (X.data if sp.issparse(X) else X).min() < 0:
        raise WeightingError("weighting expects non-negative counts")
    return X


def fit_weighting(matrix, scheme) -> TermWeighting:
    """Fit a scheme on the training matrix."""
    return TermWeighting(scheme=Scheme.parse(scheme).value).fit(matrix)


def apply_weighting(weighting: TermWeighting, matrix):
    """Weight a :class:`DocumentTermMatrix`, a count matrix, or a single row.

    Returns a :class:`WeightedMatrix` for document-term matrices and a plain
    array (or sparse matrix) otherwise.
    """
    values = weighting.transform(matrix)
    if isinstance(matrix, DocumentTermMatrix):
        return WeightedMatrix(values, weighting.scheme_)
    return values


def restrict_to_vocabulary(query_terms, vocabulary) -> tuple[np.ndarray, list[str]]:
    """Count vector over ``vocabulary`` and the list of dropped out-of-vocabulary terms."""
    index = vocabulary.index
    vec = np.zeros(len(vocabulary))
    oov = []
    for t in query_terms:
        j = index.get(t)
        if j is None:
            oov.append(t)
        else:
            vec[j] += 1
    return vec, oov


__all__ = ["Scheme", "WeightingError", "WeightedMatrix", "TermWeighting",
           "fit_weighting", "apply_weighting", "restrict_to_vocabulary"]
