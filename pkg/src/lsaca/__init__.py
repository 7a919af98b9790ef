"""LSA and correspondence analysis for ranked document retrieval."""

__version__ = "0.1.0"

from .corpus import (  # noqa: E402
    DocumentTermMatrix, PreprocessConfig, RawDocument, Vocabulary, build_matrix, ingest,
    load_dataset, make_synthetic_corpus, preprocess, toy_matrix,
)
from .embed import CA, LSA, alpha_inertia, chi2_distance, project_query, svd  # noqa: E402
from .evaluation import (  # noqa: E402
    interpolated_ap, make_splits, mean_average_precision, pr_curve,
)
from .retrieval import Metric, Retriever, rank, score  # noqa: E402
from .weighting import Scheme, TermWeighting, apply_weighting, fit_weighting  # noqa: E402

__all__ = [
    "CA", "LSA", "DocumentTermMatrix", "Metric", "PreprocessConfig", "RawDocument", "Retriever",
    "Scheme", "TermWeighting", "Vocabulary", "alpha_inertia", "apply_weighting", "build_matrix",
    "chi2_distance", "fit_weighting", "ingest", "interpolated_ap", "load_dataset",
    "make_splits", "make_synthetic_corpus", "mean_average_precision", "pr_curve", "preprocess",
    "project_query", "rank", "score", "svd", "toy_matrix",
]
