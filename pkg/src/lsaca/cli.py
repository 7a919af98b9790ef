"""Command line interface: ``lsaca <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import DocumentTermMatrix, PreprocessConfig, Preprocessor, ingest, toy_matrix
from .embed import METHODS, load_embedding, save_embedding
from .harness import (
    DEFAULT_ALPHA_GRID, DEFAULT_K_GRID, SUMMARY_MODES, TERM_MATCH, SweepConfig, emit_alpha_inertia,
    emit_coordinates, emit_plotdata, load_matrix, parse_grid, read_cells, run_sweep, summarize,
    toy_report, write_report, write_summary,
)
from .retrieval import Metric, Retriever
from .weighting import Scheme, TermWeighting, restrict_to_vocabulary

log = logging.getLogger("lsaca")


def _csv_list(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _add_dataset_args(p):
    p.add_argument("--dataset", required=True,
                   help="dataset directory/TSV, or a matrix cache prefix with --format matrix")
    p.add_argument("--format", default="tree",
                   choices=("tree", "tsv", "tokens", "bydate", "matrix"))
    p.add_argument("--config", help="preprocess config (TOML or JSON)")
    p.add_argument("--min-freq", type=int, help="override min_term_freq")
    p.add_argument("--subset", help="bydate subset: CAT1,CAT2,...:N_TRAIN:N_TEST")
    p.add_argument("--seed", type=int, default=0)


def _preprocess_config(args) -> PreprocessConfig:
    cfg = PreprocessConfig.from_file(args.config) if args.config else PreprocessConfig()
    overrides = {"seed": args.seed}
    if args.min_freq is not None:
        overrides["min_term_freq"] = args.min_freq
    return PreprocessConfig(**{**cfg.__dict__, **overrides})


def _subset(args):
    if not args.subset:
        return None
    cats, n_train, n_test = args.subset.rsplit(":", 2)
    return {"categories": _csv_list(cats), "n_train": int(n_train), "n_test": int(n_test)}


def _matrix(args) -> DocumentTermMatrix:
    cfg = SweepConfig(dataset=args.dataset, format=args.format,
                      preprocess=_preprocess_config(args), subset=_subset(args))
    return load_matrix(cfg)


def cmd_ingest(args):
    matrix = ingest(args.dataset, args.format, _preprocess_config(args), subset=_subset(args))
    matrix.save(args.out)
    info = {"out": str(args.out), "n_docs": matrix.shape[0], "n_terms": matrix.shape[1],
            "drop_report": matrix.drop_report.to_dict() if matrix.drop_report else None}
    print(json.dumps(info))


def cmd_fit(args):
    matrix = _matrix(args)
    scheme = Scheme.parse(args.scheme).value
    weighting = TermWeighting(scheme).fit(matrix.counts)
    A = weighting.transform(matrix.counts)
    est = METHODS[args.method.upper()](n_components=args.k, alpha=args.alpha).fit(A)
    extra = {
        "scheme": scheme,
        "seed": args.seed,
        "terms": list(matrix.vocabulary.terms),
        "global_weights": weighting.global_weights_.tolist(),
        "document_frequency": weighting.document_frequency_.tolist(),
        "doc_ids": list(matrix.doc_ids),
        "categories": list(matrix.categories),
        "preprocess": _preprocess_config(args).to_dict(),
        "version": __version__,
    }
    save_embedding(est, args.out, extra)
    print(json.dumps({"out": str(args.out), "method": est.method, "k": est.n_components_,
                      "rank": est.rank_, "clamp_warning": est.clamp_warning_,
                      "singular_values": est.singular_values_[:10].tolist()}))


def cmd_query(args):
    est, meta = load_embedding(args.model)
    if args.alpha is not None:
        est = est.set_alpha(args.alpha)
    from .corpus import Vocabulary

    vocab = Vocabulary(tuple(meta["terms"]), tuple(meta["document_frequency"]))
    pre = meta.get("preprocess", {})
    pre = {k: v for k, v in pre.items() if k in PreprocessConfig.KEYS}
    tokens = Preprocessor(PreprocessConfig(**pre))(args.text)
    counts, oov = restrict_to_vocabulary(tokens, vocab)
    if not counts.any():
        raise ValueError("query has no in-vocabulary terms (unanswerable)")
    weighting = TermWeighting(meta["scheme"])
    weighting.scheme_ = Scheme.parse(meta["scheme"])
    weighting.global_weights_ = np.asarray(meta["global_weights"])
    weighting.document_frequency_ = np.asarray(meta["document_frequency"])
    weighting.n_features_in_ = len(vocab)
    weighting.n_docs_ = len(meta["doc_ids"])
    q = weighting.transform(counts)
    retriever = Retriever(args.metric).fit(est.document_coordinates(), meta["categories"],
                                           doc_ids=meta["doc_ids"])
    scores, idx = retriever.kneighbors(est.transform(q.reshape(1, -1)), args.top)
    hits = [{"rank": r + 1, "doc_id": meta["doc_ids"][i], "category": meta["categories"][i],
             "score": float(s)} for r, (s, i) in enumerate(zip(scores[0], idx[0]))]
    print(json.dumps({"n_tokens": len(tokens), "oov": sorted(set(oov)), "results": hits}, indent=1))


def _sweep_config(args) -> SweepConfig:
    return SweepConfig(
        dataset=args.dataset,
        format=args.format,
        preprocess=_preprocess_config(args),
        methods=_csv_list(args.method),
        schemes=_csv_list(args.scheme),
        metrics=_csv_list(args.metric),
        k_grid=DEFAULT_K_GRID if args.k_grid == "default" else parse_grid(args.k_grid, integer=True),
        alpha_grid=(DEFAULT_ALPHA_GRID if args.alpha_grid == "default"
                    else parse_grid(args.alpha_grid)),
        splits=args.splits,
        seed=args.seed,
        solver=args.solver,
        jobs=args.jobs,
        subset=_subset(args),
    )


def cmd_sweep(args):
    config = _sweep_config(args)
    report = run_sweep(config)
    paths = write_report(report, args.out)
    if args.plotdata:
        emit_plotdata(report, Path(args.out) / "plotdata")
    print(json.dumps({k: str(v) for k, v in paths.items()}))


def cmd_summarize(args):
    report = read_cells(args.cells)
    ks = parse_grid(args.k, integer=True) if args.k else None
    rows = summarize(report, args.mode, ks=ks, alpha=args.alpha)
    if args.out:
        write_summary(rows, args.out)
    for r in rows:
        k = "" if r["k"] is None else r["k"]
        a = "" if r["alpha"] is None else r["alpha"]
        print(f"{r['method']:<10} {r['scheme']:<7} {r['metric']:<9} k={k!s:<4} "
              f"alpha={a!s:<5} MAP={r['map']:.3f}")


def cmd_plotdata(args):
    out = Path(args.out)
    paths = {}
    if args.cells:
        paths.update(emit_plotdata(read_cells(args.cells), out))
    if args.model:
        est, meta = load_embedding(args.model)
        alpha = args.alpha if args.alpha is not None else est.alpha
        paths["coordinates"] = emit_coordinates(est, meta["doc_ids"], meta["terms"],
                                                out / "coordinates.csv", alpha=alpha)
        paths["alpha_inertia"] = emit_alpha_inertia(est.singular_values_,
                                                    out / "alpha_inertia.csv")
    if not paths:
        raise ValueError("plotdata needs --cells and/or --model")
    print(json.dumps({k: str(v) for k, v in paths.items()}))


def cmd_toy(args):
    rep = toy_report()
    sigma = rep["sigma"]
    print("singular values (LSA-RAW): " + " ".join(f"{s:.3f}" for s in sigma))
    print(f"{'row':<22}" + "".join(f"{'dim' + str(d):>10}" for d in range(1, sigma.size + 1)))
    by_alpha = {}
    for a, d, pa, p2a, share in rep["rows"]:
        by_alpha.setdefault(a, []).append((pa, p2a, share))
    for a, vals in by_alpha.items():
        for label, col in ((f"sigma^{a:g}", 0), (f"sigma^{2 * a:g}", 1),
                           (f"share of alpha-inertia", 2)):
            print(f"{label:<22}" + "".join(f"{v[col]:>10.3f}" for v in vals))
        print()
    if args.out:
        F = toy_matrix()
        out = Path(args.out)
        emit_alpha_inertia(sigma, out / "alpha_inertia.csv")
        for name, cls in METHODS.items():
            est = cls(n_components=2).fit(F.toarray())
            emit_coordinates(est, F.doc_ids, F.vocabulary.terms, out / f"coordinates_{name}.csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsaca", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="dataset -> document-term matrix cache")
    _add_dataset_args(p)
    p.add_argument("--out", required=True, help="cache prefix (writes .npz and .json)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("fit", help="fit one embedding on the whole dataset")
    _add_dataset_args(p)
    p.add_argument("--method", default="CA", choices=sorted(METHODS))
    p.add_argument("--scheme", default="RAW", choices=[s.value for s in Scheme])
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out", required=True, help="model prefix (writes .npz and .json)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("query", help="ad-hoc top-N retrieval against a fitted model")
    p.add_argument("--model", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--metric", default="EUCLIDEAN", choices=[m.value for m in Metric])
    p.add_argument("--alpha", type=float)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("sweep", help="full method x scheme x metric x (k, alpha) grid")
    _add_dataset_args(p)
    p.add_argument("--method", default=",".join((TERM_MATCH, "LSA", "CA")))
    p.add_argument("--scheme", default=",".join(s.value for s in Scheme))
    p.add_argument("--metric", default=",".join(m.value for m in Metric))
    p.add_argument("--k-grid", default="default", help="'default' or e.g. 1:20,22:50:2,60:100:10")
    p.add_argument("--alpha-grid", default="default", help="'default' or e.g. -1:2:0.5")
    p.add_argument("--splits", default="kfold:5",
                   help="loocv | kfold:K | fixed:FRAC | predefined")
    p.add_argument("--solver", default="dense", choices=("dense", "arpack", "randomized"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--plotdata", action="store_true", help="also write plot CSVs")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("summarize", help="table rows from a cells.csv")
    p.add_argument("--cells", required=True)
    p.add_argument("--mode", default="joint", choices=SUMMARY_MODES)
    p.add_argument("--k", help="fixed-k values for --mode fixed_k (default 4,6,9,12,24)")
    p.add_argument("--alpha", type=float, default=1.0, help="alpha for --mode fixed_alpha")
    p.add_argument("--out")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("plotdata", help="plot-ready CSVs from a sweep and/or a model")
    p.add_argument("--cells")
    p.add_argument("--model")
    p.add_argument("--alpha", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("toy", help="six-document fixture: singular values and alpha-inertia table")
    p.add_argument("--out", help="also write coordinate and alpha-inertia CSVs here")
    p.set_defaults(func=cmd_toy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except Exception as exc:  # reported as machine-readable JSON
        if args.verbose:
            log.exception("command failed")
        print(json.dumps({"error": type(exc).__name__, "message": str(exc),
                          "command": args.command}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
