"""Eleven-point interpolated average precision, MAP, and cross-validation splits."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .retrieval import RankedList

RECALL_LEVELS = np.arange(11) / 10


@dataclass(frozen=True)
class PrecisionRecallCurve:
    recall: tuple[float, ...]
    precision: tuple[float, ...]
    # integer bookkeeping so recall thresholds are compared exactly
    hits: tuple[int, ...] = ()
    n_relevant: int = 0

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.recall, self.precision))


def pr_curve(ranked: RankedList | Sequence[bool], n_relevant: int | None = None
             ) -> PrecisionRecallCurve:
    """One (recall, precision) point per prefix of the ranking.

    ``n_relevant`` defaults to the number of relevant entries in the ranking,
    which is the whole relevant set when the ranking covers every document.
    """
    flags = np.asarray(ranked.relevant if isinstance(ranked, RankedList) else ranked, dtype=bool)
    if n_relevant is None:
        n_relevant = int(flags.sum())
    hits = np.cumsum(flags)
    i = np.arange(1, flags.size + 1)
    precision = hits / i
    recall = hits / n_relevant if n_relevant else np.zeros(flags.size)
    return PrecisionRecallCurve(tuple(recall.tolist()), tuple(precision.tolist()),
                                tuple(hits.tolist()), int(n_relevant))


def pseudo_precisions(curve: PrecisionRecallCurve) -> np.ndarray:
    """Max precision over points with recall >= each of 0, 0.1, ..., 1.0."""
    out = np.zeros(11)
    if curve.n_relevant == 0 or not curve.precision:
        return out
    hits = np.asarray(curve.hits)
    suffix_max = np.maximum.accumulate(np.asarray(curve.precision)[::-1])[::-1]
    for level in range(11):
        # recall >= level/10  <=>  10 * hits >= level * |C|
        ok = np.flatnonzero(10 * hits >= level * curve.n_relevant)
        if ok.size:
            out[level] = suffix_max[ok[0]]
    return out


def interpolated_ap(curve: PrecisionRecallCurve) -> float:
    """Mean of the eleven pseudo-precisions; 0 when there is no relevant document."""
    total = 0.0
    # left-to-right sum, matching batch_interpolated_ap bit for bit
    for p in pseudo_precisions(curve):
        total += float(p)
    return total / 11


def average_precision(relevant: Sequence[bool], n_relevant: int | None = None) -> float:
    return interpolated_ap(pr_curve(relevant, n_relevant))


def batch_interpolated_ap(relevant_sorted: np.ndarray) -> np.ndarray:
    """Vectorised :func:`interpolated_ap` for a ``(n_queries, n_docs)`` boolean matrix.

    Row ``q`` holds the relevance flags of query ``q``'s ranking, best first,
    covering all candidate documents. Precision only peaks at relevant
    positions, so the pseudo-precision at a recall level is the largest
    ``j / p_j`` over relevant documents ``j >= ceil(level * |C|)`` found at
    1-based position ``p_j``.
    """
    rel = np.asarray(relevant_sorted, dtype=bool)
    n_q = rel.shape[0]
    rows, cols = np.nonzero(rel)
    n_rel = np.bincount(rows, minlength=n_q)
    ap = np.zeros(n_q)
    if rows.size == 0:
        return ap
    start = np.concatenate(([0], np.cumsum(n_rel)[:-1]))
    j = np.arange(rows.size) - start[rows] + 1
    precision = j / (cols + 1)
    suffix = _segment_suffix_max(precision, rows, n_q)
    has = n_rel > 0
    q = np.flatnonzero(has)
    total = np.zeros(q.size)
    for level in range(11):
        need = np.maximum(-(-level * n_rel[q] // 10), 1)
        total += suffix[start[q] + need - 1]
    ap[q] = total / 11
    return ap


def _segment_suffix_max(values: np.ndarray, rows: np.ndarray, n_q: int) -> np.ndarray:
    """Suffix maximum of ``values`` in (0, 1], restarted at every change of sorted ``rows``."""
    # shifting by 2 * (n_q - row) makes every earlier segment dominate every
    # later one, so a single right-to-left running max never crosses a
    # boundary; the winner's index is tracked so unshifted values come back exact
    rev = (values + 2.0 * (n_q - rows))[::-1]
    best = np.maximum.accumulate(rev)
    pos = np.maximum.accumulate(np.where(rev == best, np.arange(rev.size), 0))
    return values[::-1][pos][::-1]


@dataclass(frozen=True)
class MapResult:
    map: float
    per_query_ap: tuple[float, ...]
    n_queries: int
    fingerprint: tuple = ()
    query_ids: tuple[str, ...] = ()
    folds: tuple[int, ...] = ()


def mean_average_precision(ap_list: Sequence[float], fingerprint: tuple = (),
                           query_ids: Sequence[str] = (), folds: Sequence[int] = ()
                           ) -> MapResult:
    aps = np.asarray(ap_list, dtype=np.float64)
    if aps.size == 0:
        raise ValueError("MAP of an empty query set is undefined")
    return MapResult(float(aps.mean()), tuple(aps.tolist()), int(aps.size), tuple(fingerprint),
                     tuple(query_ids), tuple(folds))


def write_per_query_csv(result: MapResult, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    folds = result.folds or (0,) * result.n_queries
    qids = result.query_ids or tuple(str(i) for i in range(result.n_queries))
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["fold", "query_id", "ap"])
        for f, q, ap in zip(folds, qids, result.per_query_ap):
            w.writerow([f, q, repr(ap)])
    return path


# -- splits ------------------------------------------------------------------

@dataclass(frozen=True)
class SplitPlan:
    regime: str
    folds: tuple[tuple[np.ndarray, np.ndarray], ...]
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.folds)

    def describe(self) -> dict:
        return {"regime": self.regime, "seed": self.seed, "n_folds": len(self.folds),
                **self.params}


def parse_regime(spec: str) -> tuple[str, dict]:
    """``loocv``, ``kfold[:K]``, ``fixed[:FRAC]`` or ``predefined``."""
    name, _, arg = str(spec).lower().partition(":")
    if name == "loocv":
        return "LOOCV", {}
    if name == "kfold":
        return "KFOLD", {"k": int(arg or 5)}
    if name == "fixed":
        return "FIXED", {"train_frac": float(arg or 0.8)}
    if name == "predefined":
        return "PREDEFINED", {}
    raise ValueError(f"unknown split regime {spec!r}")


def make_splits(labels: Sequence[str], regime="kfold:5", seed: int = 0,
                sides: Sequence[str | None] | None = None) -> SplitPlan:
    """Train/validation index pairs.

    KFOLD is stratified by category: each category is shuffled and dealt
    round-robin over the folds, continuing where the previous one stopped, so
    fold sizes differ by at most one. FIXED draws one seeded random split and
    PREDEFINED uses ``sides`` ("train"/"test") as given by the dataset.
    """
    labels = list(labels)
    m = len(labels)
    if m == 0:
        raise ValueError("cannot split an empty dataset")
    name, params = parse_regime(regime) if isinstance(regime, str) else regime
    rng = np.random.default_rng(seed)

    if name == "LOOCV":
        if m < 2:
            raise ValueError("LOOCV needs at least two documents")
        all_idx = np.arange(m)
        folds = tuple((np.delete(all_idx, i), np.array([i])) for i in range(m))
        return SplitPlan("LOOCV", folds, None, {})

    if name == "KFOLD":
        k = params["k"]
        if not 2 <= k <= m:
            raise ValueError(f"k-fold needs 2 <= k <= {m}, got {k}")
        assignment = np.empty(m, dtype=np.int64)
        offset = 0
        for cat in sorted(set(labels)):
            idx = np.flatnonzero(np.asarray(labels, dtype=object) == cat)
            idx = idx[rng.permutation(idx.size)]
            assignment[idx] = (offset + np.arange(idx.size)) % k
            offset = (offset + idx.size) % k
        folds = []
        for f in range(k):
            val = np.flatnonzero(assignment == f)
            if val.size == 0:
                raise ValueError("empty fold")
            folds.append((np.flatnonzero(assignment != f), val))
        return SplitPlan("KFOLD", tuple(folds), seed, {"k": k, "stratified": True})

    if name == "FIXED":
        frac = params["train_frac"]
        n_train = int(round(frac * m))
        if not 0 < n_train < m:
            raise ValueError(f"train fraction {frac} leaves an empty side for {m} documents")
        perm = rng.permutation(m)
        folds = ((np.sort(perm[:n_train]), np.sort(perm[n_train:])),)
        return SplitPlan("FIXED", folds, seed, {"train_frac": frac})

    if name == "PREDEFINED":
        if sides is None:
            raise ValueError("predefined split needs per-document train/test sides")
        sides = np.asarray(sides, dtype=object)
        train, val = np.flatnonzero(sides == "train"), np.flatnonzero(sides == "test")
        if train.size == 0 or val.size == 0:
            raise ValueError("predefined split has an empty side")
        return SplitPlan("PREDEFINED", ((train, val),), None, {})

    raise ValueError(f"unknown split regime {name!r}")


__all__ = [
    "RECALL_LEVELS", "PrecisionRecallCurve", "pr_curve", "pseudo_precisions",
    "interpolated_ap", "average_precision", "batch_interpolated_ap", "MapResult",
    "mean_average_precision", "write_per_query_csv", "SplitPlan", "parse_regime", "make_splits",
]
