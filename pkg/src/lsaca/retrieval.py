"""Similarity scoring and ranked lists."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted


class Metric(str, Enum):
    EUCLIDEAN = "EUCLIDEAN"
    DOT = "DOT"
    COSINE = "COSINE"

    @property
    def ascending(self) -> bool:
        return self is Metric.EUCLIDEAN

    @classmethod
    def parse(cls, value) -> "Metric":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown metric {value!r}; "
                             f"expected one of {[m.value for m in cls]}") from None


def _safe_norms(X: np.ndarray) -> np.ndarray:
    n = np.sqrt(np.einsum("ij,ij->i", X, X))
    n[n == 0] = 1.0  # zero vectors score 0 under cosine
    return n


def score_matrix(queries, docs, metric) -> np.ndarray:
    """``(n_queries, n_docs)`` scores; distances for EUCLIDEAN, similarities otherwise."""
    metric = Metric.parse(metric)
    Q = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    D = np.atleast_2d(np.asarray(docs, dtype=np.float64))
    if Q.shape[1] != D.shape[1]:
        raise ValueError(f"dimension mismatch: query k={Q.shape[1]}, docs k={D.shape[1]}")
    if metric is Metric.EUCLIDEAN:
        return cdist(Q, D, "euclidean")
    if metric is Metric.COSINE:
        # normalize first: in one dimension every score is then exactly +-1,
        # so exact ties (and the index tie-break) do not depend on rounding
        Q = Q / _safe_norms(Q)[:, None]
        D = D / _safe_norms(D)[:, None]
    return Q @ D.T


def score(query, docs, metric) -> np.ndarray:
    """Scores of one query vector against every row of ``docs``."""
    return score_matrix(np.reshape(query, (1, -1)), docs, metric)[0]


def rank_order(scores: np.ndarray, metric) -> np.ndarray:
    """Argsort per metric direction; ties keep ascending document index.

    Sorts with the fast unstable kernel and re-sorts stably only the rows
    where the sorted keys contain an exact tie, which gives the same result
    as a stable sort everywhere.
    """
    metric = Metric.parse(metric)
    key = np.asarray(scores if metric.ascending else -np.asarray(scores))
    if key.ndim == 1:
        return rank_order(key[None, :], Metric.EUCLIDEAN)[0]
    order = np.argsort(key, axis=1, kind="quicksort")
    ranked = np.take_along_axis(key, order, axis=1)
    tied = np.flatnonzero(np.any(ranked[:, 1:] == ranked[:, :-1], axis=1))
    if tied.size:
        order[tied] = np.argsort(key[tied], axis=1, kind="stable")
    return order


def euclidean_rank_key(Q: np.ndarray, D: np.ndarray) -> np.ndarray:
    """``|d|^2 - 2 q.d``: orders documents exactly like the Euclidean distance.

    Drops the per-query constant ``|q|^2`` and the square root, which lets the
    sweep rank with one matrix product instead of pairwise distances.
    """
    return np.einsum("ij,ij->i", D, D)[None, :] - 2.0 * (Q @ D.T)


@dataclass(frozen=True)
class RankedList:
    query_id: str
    metric: Metric
    doc_ids: tuple[str, ...]
    scores: tuple[float, ...]
    relevant: tuple[bool, ...]

    def __len__(self):
        return len(self.doc_ids)

    @property
    def n_relevant(self) -> int:
        return int(sum(self.relevant))


def rank(scores, metric, doc_categories: Sequence[str], query_category: str,
         doc_ids: Sequence[str] | None = None, query_id: str = "q") -> RankedList:
    scores = np.asarray(scores, dtype=np.float64)
    if not np.all(np.isfinite(scores)):
        raise ValueError("scores must be finite")
    metric = Metric.parse(metric)
    order = rank_order(scores, metric)
    if doc_ids is None:
        doc_ids = [str(i) for i in range(scores.size)]
    return RankedList(
        query_id=query_id,
        metric=metric,
        doc_ids=tuple(doc_ids[i] for i in order),
        scores=tuple(float(scores[i]) for i in order),
        relevant=tuple(doc_categories[i] == query_category for i in order),
    )


class Retriever(BaseEstimator):
    """Exhaustive nearest-document search over fitted document coordinates."""

    def __init__(self, metric="EUCLIDEAN"):
        self.metric = metric

    def fit(self, X, y=None, doc_ids=None):
        self.docs_ = check_array(X, dtype=np.float64)
        self.metric_ = Metric.parse(self.metric)
        self.labels_ = None if y is None else list(y)
        self.doc_ids_ = [str(i) for i in range(len(self.docs_))] if doc_ids is None else list(doc_ids)
        return self

    def decision_function(self, Q) -> np.ndarray:
        check_is_fitted(self, "docs_")
        return score_matrix(Q, self.docs_, self.metric_)

    def kneighbors(self, Q, n_neighbors=10) -> tuple[np.ndarray, np.ndarray]:
        """``(scores, indices)`` of the top ``n_neighbors`` documents per query."""
        S = self.decision_function(Q)
        order = rank_order(S, self.metric_)[:, :n_neighbors]
        return np.take_along_axis(S, order, axis=1), order

    def rank(self, q, query_category=None, query_id="q") -> RankedList:
        check_is_fitted(self, "docs_")
        labels = self.labels_ or [None] * len(self.docs_)
        return rank(score(q, self.docs_, self.metric_), self.metric_, labels,
                    query_category, doc_ids=self.doc_ids_, query_id=query_id)


def write_trec_run(ranked_lists: Sequence[RankedList], path, run_name: str | None = None,
                   depth: int | None = None) -> Path:
    """``query_id doc_id rank score`` lines (plus a run tag when ``run_name`` is set)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for rl in ranked_lists:
            n = len(rl) if depth is None else min(depth, len(rl))
            for pos in range(n):
                fields = [rl.query_id, rl.doc_ids[pos], str(pos + 1), repr(rl.scores[pos])]
                if run_name:
                    fields.append(run_name)
                fh.write(" ".join(fields) + "\n")
    return path


__all__ = ["Metric", "score", "score_matrix", "rank", "rank_order", "euclidean_rank_key",
           "RankedList", "Retriever", "write_trec_run"]
