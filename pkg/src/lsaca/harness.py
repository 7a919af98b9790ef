"""Experiment harness: method x weighting x metric x (k, alpha) MAP sweeps."""

from __future__ import annotations

import csv
import json
import logging
import math
import platform
import warnings
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy
import scipy.sparse as sp
import sklearn
from joblib import Parallel, delayed

from . import __version__
from .corpus import DocumentTermMatrix, PreprocessConfig, ingest
from .embed import METHODS, EmbeddingError, RankClampWarning, alpha_inertia, svd
from .evaluation import MapResult, SplitPlan, batch_interpolated_ap, make_splits
from .retrieval import Metric, euclidean_rank_key, rank_order, score_matrix
from .weighting import Scheme, TermWeighting

logger = logging.getLogger(__name__)

TERM_MATCH = "TERM_MATCH"
ALL_METHODS = (TERM_MATCH, "LSA", "CA")


def _decimal_range(start: str, stop: str, step: str) -> list[float]:
    a, b, s = Decimal(start), Decimal(stop), Decimal(step)
    if s <= 0:
        raise ValueError("grid step must be positive")
    out = []
    while a <= b:
        out.append(float(a))
        a += s
    return out


def parse_grid(text: str, integer: bool = False) -> list:
    """Comma separated values or inclusive ``start:stop:step`` ranges."""
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = part.split(":")
            if len(bits) == 2:
                bits.append("1")
            values.extend(_decimal_range(*bits))
        else:
            values.append(float(Decimal(part)))
    if integer:
        if any(v != int(v) for v in values):
            raise ValueError(f"non-integer value in grid {text!r}")
        values = [int(v) for v in values]
    if not values:
        raise ValueError("empty grid")
    return sorted(set(values))


DEFAULT_K_GRID = tuple(parse_grid("1:20:1,22:50:2,60:100:10", integer=True))
DEFAULT_ALPHA_GRID = tuple(parse_grid("-6:-2:0.5,-1.8:4:0.2,4.5:8:0.5"))
REPORT_KS = (4, 6, 9, 12, 24)


@dataclass
class SweepConfig:
    dataset: str | None = None
    format: str = "tree"
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    methods: tuple[str, ...] = ALL_METHODS
    schemes: tuple[str, ...] = tuple(s.value for s in Scheme)
    metrics: tuple[str, ...] = tuple(m.value for m in Metric)
    k_grid: tuple[int, ...] = DEFAULT_K_GRID
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    splits: str = "kfold:5"
    seed: int = 0
    solver: str = "dense"
    jobs: int = 1
    subset: dict | None = None

    def __post_init__(self):
        self.methods = tuple(m.upper() for m in self.methods)
        bad = set(self.methods) - set(ALL_METHODS)
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}")
        self.schemes = tuple(Scheme.parse(s).value for s in self.schemes)
        self.metrics = tuple(Metric.parse(m).value for m in self.metrics)
        self.k_grid = tuple(sorted({int(k) for k in self.k_grid}))
        self.alpha_grid = tuple(sorted({float(a) for a in self.alpha_grid}))
        if not (self.methods and self.schemes and self.metrics and self.k_grid and self.alpha_grid):
            raise ValueError("sweep grids must be non-empty")
        if self.k_grid[0] < 1:
            raise ValueError("k must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["preprocess"] = self.preprocess.to_dict()
        return d


@dataclass
class Cell:
    method: str
    scheme: str
    metric: str
    k: int | None
    alpha: float | None
    map: float
    n_queries: int
    k_eff: int | None = None
    status: str = "ok"
    reason: str = ""
    result: MapResult | None = None

    @property
    def key(self):
        return (self.method, self.scheme, self.metric, self.k, self.alpha)


@dataclass
class SweepReport:
    cells: dict
    config: SweepConfig | None = None
    manifest: dict = field(default_factory=dict)

    @property
    def summaries(self) -> list[dict]:
        return summarize(self, "joint")

    def cell(self, method, scheme, metric, k=None, alpha=None) -> Cell:
        return self.cells[(method, scheme, metric, k, alpha)]

    def restrict(self, ks=None, alphas=None) -> "SweepReport":
        keep = {}
        for key, c in self.cells.items():
            if c.k is not None and ks is not None and c.k not in ks:
                continue
            if c.alpha is not None and alphas is not None and c.alpha not in alphas:
                continue
            keep[key] = c
        return SweepReport(keep, self.config, dict(self.manifest))


# -- ranking + AP ------------------------------------------------------------

def _ranking_ap(Q: np.ndarray, D: np.ndarray, metric: Metric, rel: np.ndarray) -> np.ndarray:
    if Q.shape[0] == 0:
        return np.zeros(0)
    if metric is Metric.EUCLIDEAN:
        key = euclidean_rank_key(Q, D)
    elif metric is Metric.DOT:
        key = -(Q @ D.T)
    else:
        key = -score_matrix(Q, D, metric)
    order = rank_order(key, Metric.EUCLIDEAN)
    return batch_interpolated_ap(np.take_along_axis(rel, order, axis=1))


@dataclass
class _FoldInputs:
    A: sp.csr_matrix          # weighted training rows
    Q: sp.csr_matrix          # weighted answerable queries
    rel: np.ndarray           # (n_answerable, n_train) bool
    answerable: np.ndarray    # (n_val,) bool
    query_ids: tuple


def _prepare_fold(matrix: DocumentTermMatrix, train, val, scheme: str) -> _FoldInputs:
    Xtr = matrix.counts[train]
    Xva = matrix.counts[val]
    # training-vocabulary restriction; query terms unseen in training are dropped
    cols = np.flatnonzero(np.asarray(Xtr.sum(axis=0)).ravel() > 0)
    Xtr = Xtr[:, cols]
    Xva = Xva[:, cols]
    answerable = np.asarray(Xva.sum(axis=1)).ravel() > 0
    w = TermWeighting(scheme).fit(Xtr)
    A = w.transform(Xtr)
    Q = w.transform(Xva[answerable]) if answerable.any() else sp.csr_matrix((0, len(cols)))
    cats = np.asarray(matrix.categories, dtype=object)
    rel = cats[val][answerable][:, None] == cats[train][None, :]
    qids = tuple(matrix.doc_ids[i] for i in val)
    return _FoldInputs(A, Q, rel, answerable, qids)


def _unit(matrix, fold_index, train, val, scheme, methods, metrics, ks, alphas, solver):
    """All cells of one (fold, scheme): returns ``{method: (aps, info)}``.

    ``aps`` has shape ``(n_k, n_alpha, n_metric, n_val)`` (term matching
    ``(n_metric, n_val)``); unanswerable queries keep AP 0.
    """
    inputs = _prepare_fold(matrix, train, val, scheme)
    n_val = len(val)
    metrics = [Metric.parse(m) for m in metrics]
    out = {}
    Qd = inputs.Q.toarray()
    if TERM_MATCH in methods:
        aps = np.zeros((len(metrics), n_val))
        Ad = inputs.A.toarray()
        for mi, metric in enumerate(metrics):
            aps[mi, inputs.answerable] = _ranking_ap(Qd, Ad, metric, inputs.rel)
        out[TERM_MATCH] = (aps, {})
    for method in methods:
        if method == TERM_MATCH:
            continue
        aps = np.zeros((len(ks), len(alphas), len(metrics), n_val))
        info = {"clamp": None, "error": None, "k_eff": list(ks)}
        est = METHODS[method](n_components=max(ks), solver=solver)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RankClampWarning)
                est.fit(inputs.A)
        except (EmbeddingError, ValueError) as exc:
            info["error"] = f"{type(exc).__name__}: {exc}"
            out[method] = (aps, info)
            continue
        info["clamp"] = est.clamp_warning_
        sigma = est.singular_values_
        base_docs = est.row_basis_
        base_q = est.fold_in(Qd) if Qd.shape[0] else np.zeros((0, sigma.size))
        done = {}
        for ki, k in enumerate(ks):
            ke = min(k, est.n_components_)
            info["k_eff"][ki] = ke
            if ke in done:
                aps[ki] = aps[done[ke]]
                continue
            done[ke] = ki
            for ai, a in enumerate(alphas):
                D = base_docs[:, :ke] * sigma[:ke] ** a
                Qc = base_q[:, :ke] * sigma[:ke] ** (a - 1.0)
                for mi, metric in enumerate(metrics):
                    aps[ki, ai, mi, inputs.answerable] = _ranking_ap(Qc, D, metric, inputs.rel)
        out[method] = (aps, info)
    return fold_index, scheme, out, int((~inputs.answerable).sum()), inputs.query_ids


def load_matrix(config: SweepConfig) -> DocumentTermMatrix:
    if config.dataset is None:
        raise ValueError("no dataset configured")
    if config.format == "matrix":
        return DocumentTermMatrix.load(config.dataset)
    return ingest(config.dataset, config.format, config.preprocess, subset=config.subset)


def plan_for(matrix: DocumentTermMatrix, config: SweepConfig) -> SplitPlan:
    return make_splits(matrix.categories, config.splits, seed=config.seed, sides=matrix.splits)


def run_sweep(config: SweepConfig, matrix: DocumentTermMatrix | None = None,
              plan: SplitPlan | None = None, keep_per_query: bool = False) -> SweepReport:
    """Evaluate every requested cell.

    One factorization per (fold, method, scheme) at ``max(k_grid)`` is sliced
    for all (k, alpha) cells; per-fold results are merged in fold order so
    the report is independent of ``jobs``.
    """
    matrix = matrix if matrix is not None else load_matrix(config)
    plan = plan if plan is not None else plan_for(matrix, config)
    ks, alphas, metrics = config.k_grid, config.alpha_grid, config.metrics

    tasks = [(fi, tr, va, scheme) for fi, (tr, va) in enumerate(plan.folds)
             for scheme in config.schemes]
    runner = Parallel(n_jobs=config.jobs) if config.jobs != 1 else None
    call = delayed(_unit) if runner else _unit
    args = [call(matrix, fi, tr, va, scheme, config.methods, metrics, ks, alphas, config.solver)
            for fi, tr, va, scheme in tasks]
    results = runner(args) if runner else args
    results = sorted(results, key=lambda r: (r[0], config.schemes.index(r[1])))

    per_query: dict = {}
    status: dict = {}
    clamps, unanswerable = set(), {}
    qids, folds = {}, {}
    for fi, scheme, out, n_unans, fold_qids in results:
        unanswerable[(fi, scheme)] = n_unans
        qids.setdefault(scheme, []).extend(fold_qids)
        folds.setdefault(scheme, []).extend([fi] * len(fold_qids))
        for method, (aps, info) in out.items():
            per_query.setdefault((method, scheme), []).append(aps)
            if info.get("clamp"):
                clamps.add(f"fold {fi} {scheme}: {info['clamp']}")
            st = status.setdefault((method, scheme), {"error": None, "k_eff": None})
            if info.get("error") and st["error"] is None:
                st["error"] = f"fold {fi}: {info['error']}"
            if info.get("k_eff") is not None and not info.get("error"):
                prev = st["k_eff"]
                st["k_eff"] = info["k_eff"] if prev is None else [min(a, b) for a, b in
                                                                  zip(prev, info["k_eff"])]

    cells = {}
    for method in config.methods:
        for scheme in config.schemes:
            aps_all = np.concatenate(per_query[(method, scheme)], axis=-1)
            n_q = aps_all.shape[-1]
            st = status.get((method, scheme), {})
            for mi, metric in enumerate(metrics):
                if method == TERM_MATCH:
                    cells[(method, scheme, metric, None, None)] = _make_cell(
                        method, scheme, metric, None, None, aps_all[mi], None, None,
                        keep_per_query, qids[scheme], folds[scheme])
                    continue
                for ki, k in enumerate(ks):
                    k_eff = None if st.get("k_eff") is None else st["k_eff"][ki]
                    for ai, a in enumerate(alphas):
                        cells[(method, scheme, metric, k, a)] = _make_cell(
                            method, scheme, metric, k, a, aps_all[ki, ai, mi], k_eff,
                            st.get("error"), keep_per_query, qids[scheme], folds[scheme])
            assert n_q == len(qids[scheme])

    manifest = {
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "scikit_learn": sklearn.__version__,
        "config": config.to_dict(),
        "matrix": {"n_docs": matrix.shape[0], "n_terms": matrix.shape[1],
                   "drop_report": None if matrix.drop_report is None
                   else matrix.drop_report.to_dict()},
        "splits": plan.describe(),
        "rank_tolerance": 1e-10,
        "tie_break": "stable by ascending training-document index",
        "clamp_warnings": sorted(clamps),
        "unanswerable_queries": {f"{fi}/{s}": n for (fi, s), n in sorted(unanswerable.items())
                                 if n},
        "failed": sorted({f"{m}/{s}: {st['error']}" for (m, s), st in status.items()
                          if st.get("error")}),
    }
    return SweepReport(cells, config, manifest)


def _make_cell(method, scheme, metric, k, alpha, aps, k_eff, error, keep, qids, folds) -> Cell:
    n = int(aps.size)
    if error:
        return Cell(method, scheme, metric, k, alpha, math.nan, n, k_eff, "failed", error)
    status, reason = "ok", ""
    if k is not None and k_eff is not None and k_eff < k:
        status, reason = "clamped", f"k={k} exceeds rank; evaluated at k={k_eff}"
    result = None
    if keep:
        result = MapResult(float(aps.mean()), tuple(aps.tolist()), n,
                           (method, scheme, metric, k, alpha), tuple(qids), tuple(folds))
    return Cell(method, scheme, metric, k, alpha, float(aps.mean()), n, k_eff, status, reason,
                result)


def run_term_match(config: SweepConfig, matrix: DocumentTermMatrix | None = None,
                   plan: SplitPlan | None = None) -> dict:
    """MAP of scoring queries against the weighted matrix rows, per (scheme, metric)."""
    cfg = SweepConfig(**{**config.__dict__, "methods": (TERM_MATCH,)})
    report = run_sweep(cfg, matrix, plan, keep_per_query=True)
    return {(c.scheme, c.metric): c.result for c in report.cells.values()}


def evaluate_config(matrix: DocumentTermMatrix, plan: SplitPlan, method: str, scheme: str,
                    metric: str, k: int | None = None, alpha=1.0,
                    solver: str = "dense"):
    """MAP of one configuration with a fresh rank-k fit per fold.

    Goes through the public estimator API (``set_alpha``,
    ``document_coordinates`` and ``transform``), independently of the sliced
    factorization used by :func:`run_sweep`. A sequence of ``alpha`` values
    shares each fold's fit and returns one :class:`MapResult` per value.
    """
    alphas = list(alpha) if np.ndim(alpha) else [alpha]
    scheme_ = Scheme.parse(scheme).value
    metric_ = Metric.parse(metric)
    aps = [[] for _ in alphas]
    qids, folds = [], []
    for fi, (train, val) in enumerate(plan.folds):
        inputs = _prepare_fold(matrix, train, val, scheme_)
        Qd = inputs.Q.toarray()
        est = None
        if method != TERM_MATCH:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RankClampWarning)
                est = METHODS[method](n_components=k, solver=solver).fit(inputs.A)
        for ai, a in enumerate(alphas):
            fold_ap = np.zeros(len(val))
            if est is None:
                Qc, D = Qd, inputs.A.toarray()
            else:
                emb = est.set_alpha(a)
                D = emb.document_coordinates()
                Qc = emb.transform(Qd) if Qd.shape[0] else np.zeros((0, D.shape[1]))
            fold_ap[inputs.answerable] = _ranking_ap(Qc, D, metric_, inputs.rel)
            aps[ai].append(fold_ap)
        qids.extend(inputs.query_ids)
        folds.extend([fi] * len(val))
    out = []
    for a, parts in zip(alphas, aps):
        v = np.concatenate(parts)
        out.append(MapResult(float(v.mean()), tuple(v.tolist()), int(v.size),
                             (method, scheme_, metric_.value, k, a), tuple(qids), tuple(folds)))
    return out if np.ndim(alpha) else out[0]


# -- summaries ---------------------------------------------------------------

SUMMARY_MODES = ("fixed_alpha", "fixed_k", "joint")


def _argmax(cells: Sequence[Cell]) -> Cell | None:
    best = None
    # ties: smaller k, then smaller alpha
    for c in sorted(cells, key=lambda c: (c.k, c.alpha)):
        if c.status == "failed" or math.isnan(c.map):
            continue
        if best is None or c.map > best.map:
            best = c
    return best


def _row(mode, c: Cell, fixed=None) -> dict:
    return {"mode": mode, "method": c.method, "scheme": c.scheme, "metric": c.metric,
            "k": c.k, "alpha": c.alpha, "map": c.map, "fixed": fixed}


def summarize(report: SweepReport, mode: str = "joint", ks: Sequence[int] | None = None,
              alpha: float = 1.0) -> list[dict]:
    """Table rows: optimal k at fixed alpha, optimal alpha at each fixed k, or the joint optimum.

    Term-matching baselines are included in every mode.
    """
    if mode not in SUMMARY_MODES:
        raise ValueError(f"unknown summary mode {mode!r}; expected one of {SUMMARY_MODES}")
    groups: dict = {}
    for c in report.cells.values():
        groups.setdefault((c.method, c.scheme, c.metric), []).append(c)
    order = {m: i for i, m in enumerate(ALL_METHODS)}
    rows = []
    for (method, scheme, metric), cells in sorted(
            groups.items(), key=lambda kv: (order[kv[0][0]], [s.value for s in Scheme].index(kv[0][1]),
                                            [m.value for m in Metric].index(kv[0][2]))):
        if method == TERM_MATCH:
            rows.append(_row(mode, cells[0]))
            continue
        if mode == "fixed_alpha":
            sl = [c for c in cells if c.alpha == alpha]
            if not sl:
                raise KeyError(f"alpha={alpha} not in the report")
            best = _argmax(sl)
            if best:
                rows.append(_row(mode, best, fixed=alpha))
        elif mode == "fixed_k":
            available = sorted({c.k for c in cells})
            wanted = [k for k in (ks or REPORT_KS) if k in available]
            if ks and len(wanted) != len(ks):
                raise KeyError(f"k values {sorted(set(ks) - set(available))} not in the report")
            for k in wanted:
                best = _argmax([c for c in cells if c.k == k])
                if best:
                    rows.append(_row(mode, best, fixed=k))
        else:
            best = _argmax(cells)
            if best:
                rows.append(_row(mode, best))
    return rows


# -- persistence -------------------------------------------------------------

CELL_FIELDS = ("method", "scheme", "metric", "k", "alpha", "k_eff", "map", "n_queries", "status",
               "reason")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_cells(report: SweepReport, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CELL_FIELDS)
        for c in report.cells.values():
            w.writerow([_fmt(getattr(c, f)) for f in CELL_FIELDS])
    return path


def read_cells(path) -> SweepReport:
    cells = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            k = int(row["k"]) if row["k"] else None
            a = float(row["alpha"]) if row["alpha"] else None
            c = Cell(row["method"], row["scheme"], row["metric"], k, a, float(row["map"]),
                     int(row["n_queries"]), int(row["k_eff"]) if row["k_eff"] else None,
                     row["status"], row["reason"])
            cells[c.key] = c
    return SweepReport(cells)


def write_summary(rows: Sequence[dict], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields = ("mode", "method", "scheme", "metric", "fixed", "k", "alpha", "map")
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([_fmt(r.get(f)) for f in fields])
    return path


def write_report(report: SweepReport, out_dir) -> dict:
    """``cells.csv``, ``summary.csv`` (all three modes) and ``manifest.json``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    alphas = {c.alpha for c in report.cells.values()}
    for mode in SUMMARY_MODES:
        if mode == "fixed_alpha" and 1.0 not in alphas:
            continue
        rows.extend(summarize(report, mode))
    paths = {
        "cells": write_cells(report, out / "cells.csv"),
        "summary": write_summary(rows, out / "summary.csv"),
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(report.manifest, indent=1, sort_keys=True, default=str)
                             + "\n", encoding="utf-8")
    paths["manifest"] = manifest_path
    return paths


# -- plot data ---------------------------------------------------------------

def _write_rows(path: Path, header, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
    return path


def emit_plotdata(report: SweepReport, out_dir, alpha: float = 1.0,
                  ks: Sequence[int] = REPORT_KS) -> dict:
    """MAP-vs-k (at ``alpha``), MAP-vs-alpha per k, and MAP-vs-alpha at the best k."""
    out = Path(out_dir)
    groups: dict = {}
    for c in report.cells.values():
        if c.k is not None:
            groups.setdefault((c.method, c.scheme, c.metric), []).append(c)
    vs_k, vs_alpha, vs_alpha_best = [], [], []
    for (method, scheme, metric), cells in groups.items():
        for c in sorted(cells, key=lambda c: c.k):
            if c.alpha == alpha:
                vs_k.append((method, scheme, metric, c.k, c.map))
        for c in sorted(cells, key=lambda c: (c.k, c.alpha)):
            if c.k in ks:
                vs_alpha.append((method, scheme, metric, c.k, c.alpha, c.map))
        for a in sorted({c.alpha for c in cells}):
            best = _argmax([c for c in cells if c.alpha == a])
            if best:
                vs_alpha_best.append((method, scheme, metric, a, best.k, best.map))
    return {
        "map_vs_k": _write_rows(out / "map_vs_k.csv",
                                ("method", "scheme", "metric", "k", "map"), vs_k),
        "map_vs_alpha": _write_rows(out / "map_vs_alpha.csv",
                                    ("method", "scheme", "metric", "k", "alpha", "map"), vs_alpha),
        "map_vs_alpha_best_k": _write_rows(
            out / "map_vs_alpha_best_k.csv",
            ("method", "scheme", "metric", "alpha", "best_k", "map"), vs_alpha_best),
    }


def emit_coordinates(embedding, doc_labels, term_labels, path, alpha=None,
                     dims: int = 2) -> Path:
    """Document and term coordinates (first ``dims`` dimensions) for scatter plots."""
    docs = embedding.document_coordinates(alpha)[:, :dims]
    terms = embedding.term_coordinates(alpha)[:, :dims]
    header = ("kind", "label") + tuple(f"dim{d + 1}" for d in range(docs.shape[1]))
    rows = [("document", lab, *map(float, xy)) for lab, xy in zip(doc_labels, docs)]
    rows += [("term", lab, *map(float, xy)) for lab, xy in zip(term_labels, terms)]
    return _write_rows(Path(path), header, rows)


def alpha_inertia_table(sigma, alphas=(-0.5, 0.0, 0.5, 1.0, 1.5)) -> list[tuple]:
    """Rows ``(alpha, dim, sigma**alpha, sigma**(2 alpha), share of alpha-inertia)``."""
    sigma = np.asarray(sigma, dtype=np.float64)
    rows = []
    for a in alphas:
        share = alpha_inertia(sigma, a)
        for d, (s, p) in enumerate(zip(sigma, share), 1):
            rows.append((float(a), d, float(s ** a), float(s ** (2 * a)), float(p)))
    return rows


def emit_alpha_inertia(sigma, path, alphas=(-0.5, 0.0, 0.5, 1.0, 1.5)) -> Path:
    return _write_rows(Path(path), ("alpha", "dim", "sigma_pow_alpha", "sigma_pow_2alpha",
                                    "proportion"), alpha_inertia_table(sigma, alphas))


def toy_report() -> dict:
    """Singular values and alpha-inertia table of the six-document fixture (raw LSA)."""
    from .corpus import toy_matrix

    F = toy_matrix()
    factors = svd(F.toarray())
    return {"sigma": factors.sigma, "rows": alpha_inertia_table(factors.sigma)}


__all__ = [
    "TERM_MATCH", "ALL_METHODS", "DEFAULT_K_GRID", "DEFAULT_ALPHA_GRID", "REPORT_KS", "parse_grid",
    "SweepConfig", "Cell", "SweepReport", "load_matrix", "plan_for", "run_sweep",
    "run_term_match", "evaluate_config", "summarize", "SUMMARY_MODES", "write_cells",
    "read_cells", "write_summary", "write_report", "emit_plotdata", "emit_coordinates",
    "alpha_inertia_table", "emit_alpha_inertia", "toy_report",
]
