"""Dataset ingestion, text preprocessing and document-term matrix construction."""

from __future__ import annotations

import csv
import importlib
import json
import logging
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

logger = logging.getLogger(__name__)

FORMATS = ("tree", "tsv", "tokens", "bydate")

# RFC-822 style header line, e.g. "From: someone@example.org"
_HEADER_LINE = re.compile(r"^[A-Za-z][A-Za-z0-9-]*:(\s|$)")
_EMAIL = re.compile(r"\S+@\S+")


class CorpusError(ValueError):
    """Raised for malformed datasets and degenerate corpora."""


@dataclass(frozen=True)
class RawDocument:
    id: str
    category: str
    text: str | None = None
    tokens: tuple[str, ...] | None = None
    split: str | None = None

    def __post_init__(self):
        if not self.category:
            raise CorpusError(f"document {self.id!r} has an empty category")
        if self.text is None and self.tokens is None:
            raise CorpusError(f"document {self.id!r} has neither text nor tokens")


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    doc_frequency: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise CorpusError("duplicate terms in vocabulary")
        if len(self.terms) != len(self.doc_frequency):
            raise CorpusError("doc_frequency length does not match terms")

    @property
    def index(self) -> dict[str, int]:
        return {t: j for j, t in enumerate(self.terms)}

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index


@dataclass(frozen=True)
class DropReport:
    min_term_freq: int
    dropped_terms: int
    dropped_documents: tuple[str, ...] = ()

    def to_dict(self):
        return {
            "min_term_freq": self.min_term_freq,
            "dropped_terms": self.dropped_terms,
            "dropped_documents": list(self.dropped_documents),
        }


@dataclass(frozen=True, eq=False)
class DocumentTermMatrix:
    """Sparse count matrix with row (document) and column (term) labels.

    ``counts`` is an ``m x n`` CSR matrix of non-negative integers.
    """

    counts: sp.csr_matrix
    doc_ids: tuple[str, ...]
    categories: tuple[str, ...]
    vocabulary: Vocabulary
    drop_report: DropReport | None = None
    splits: tuple[str | None, ...] | None = None

    def __post_init__(self):
        m, n = self.counts.shape
        if m == 0 or n == 0:
            raise CorpusError("document-term matrix must be non-empty")
        if len(self.doc_ids) != m or len(self.categories) != m:
            raise CorpusError("row labels do not match matrix shape")
        if len(self.vocabulary) != n:
            raise CorpusError("vocabulary does not match matrix shape")
        if self.counts.nnz and self.counts.data.min() < 0:
            raise CorpusError("counts must be non-negative")

    @property
    def shape(self):
        return self.counts.shape

    def toarray(self) -> np.ndarray:
        return self.counts.toarray().astype(np.float64)

    def subset(self, rows: Sequence[int]) -> "DocumentTermMatrix":
        """Row subset keeping the full column space (zero columns allowed)."""
        rows = np.asarray(rows, dtype=np.intp)
        return DocumentTermMatrix(
            counts=self.counts[rows],
            doc_ids=tuple(self.doc_ids[i] for i in rows),
            categories=tuple(self.categories[i] for i in rows),
            vocabulary=self.vocabulary,
            splits=None if self.splits is None else tuple(self.splits[i] for i in rows),
        )

    def save(self, path):
        """Write ``<path>.npz`` (counts) and ``<path>.json`` (labels)."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        sp.save_npz(path.with_suffix(".npz"), self.counts)
        meta = {
            "doc_ids": list(self.doc_ids),
            "categories": list(self.categories),
            "terms": list(self.vocabulary.terms),
            "doc_frequency": list(self.vocabulary.doc_frequency),
            "splits": None if self.splits is None else list(self.splits),
            "drop_report": None if self.drop_report is None else self.drop_report.to_dict(),
        }
        path.with_suffix(".json").write_text(json.dumps(meta, indent=1), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "DocumentTermMatrix":
        path = Path(path)
        counts = sp.load_npz(path.with_suffix(".npz")).tocsr()
        meta = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
        report = meta.get("drop_report")
        if report is not None:
            report = DropReport(report["min_term_freq"], report["dropped_terms"],
                                tuple(report["dropped_documents"]))
        splits = meta.get("splits")
        return cls(
            counts=counts,
            doc_ids=tuple(meta["doc_ids"]),
            categories=tuple(meta["categories"]),
            vocabulary=Vocabulary(tuple(meta["terms"]), tuple(meta["doc_frequency"])),
            drop_report=report,
            splits=None if splits is None else tuple(splits),
        )


# -- ingestion ---------------------------------------------------------------

def _read_text(path: Path) -> str:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"unreadable file {path}: {exc}") from exc
    return raw.decode("utf-8", errors="replace")


def _load_tree(root: Path, split: str | None = None) -> list[RawDocument]:
    docs = []
    categories = sorted(p for p in root.iterdir() if p.is_dir())
    for cat_dir in categories:
        files = sorted(p for p in cat_dir.iterdir() if p.is_file() and not p.name.startswith("."))
        if not files:
            raise CorpusError(f"empty category folder: {cat_dir.name}")
        for f in files:
            doc_id = f"{cat_dir.name}/{f.stem}"
            if split is not None:
                doc_id = f"{split}/{doc_id}"
            docs.append(RawDocument(doc_id, cat_dir.name, text=_read_text(f), split=split))
    return docs


def _load_tsv(root: Path, pretokenized: bool) -> list[RawDocument]:
    files = [root] if root.is_file() else sorted(root.glob("*.tsv"))
    if not files:
        raise CorpusError(f"no .tsv file under {root}")
    docs = []
    for f in files:
        text = _read_text(f)
        for lineno, row in enumerate(csv.reader(text.splitlines(), delimiter="\t",
                                                quoting=csv.QUOTE_NONE), 1):
            if not row or (lineno == 1 and row[:2] == ["id", "category"]):
                continue
            if len(row) < 3:
                raise CorpusError(f"{f}:{lineno}: expected id<TAB>category<TAB>text")
            doc_id, category, body = row[0], row[1], "\t".join(row[2:])
            if pretokenized:
                docs.append(RawDocument(doc_id, category, tokens=tuple(body.split())))
            else:
                docs.append(RawDocument(doc_id, category, text=body))
    return docs


def load_dataset(path, format: str = "tree") -> list[RawDocument]:
    """Read a dataset from disk.

    Supported layouts:

    ``tree``
        ``root/<category>/<docid>.txt``
    ``tsv``
        ``id<TAB>category<TAB>text`` rows (a single file or every ``*.tsv`` in a directory)
    ``tokens``
        like ``tsv`` but the third column is a space separated, already lemmatized token list
    ``bydate``
        ``root/<train-dir>/<category>/<docid>`` and ``root/<test-dir>/<category>/<docid>``,
        the 20 Newsgroups "bydate" distribution; each document records its side in ``split``
    """
    if format not in FORMATS:
        raise CorpusError(f"unknown dataset format {format!r}; expected one of {FORMATS}")
    root = Path(path)
    if not root.exists():
        raise CorpusError(f"dataset path does not exist: {root}")

    if format == "tree":
        if not root.is_dir():
            raise CorpusError(f"not a directory: {root}")
        docs = _load_tree(root)
    elif format in ("tsv", "tokens"):
        docs = _load_tsv(root, pretokenized=format == "tokens")
    else:
        docs = []
        for side in ("train", "test"):
            matches = sorted(p for p in root.iterdir() if p.is_dir() and p.name.endswith(side))
            if len(matches) != 1:
                raise CorpusError(f"expected exactly one '*{side}' directory under {root}")
            docs.extend(_load_tree(matches[0], split=side))

    if not docs:
        raise CorpusError(f"empty dataset: {root}")
    ids = Counter(d.id for d in docs)
    dupes = [i for i, c in ids.items() if c > 1]
    if dupes:
        raise CorpusError(f"duplicate document ids: {dupes[:5]}")
    return docs


def select_subset(docs: Sequence[RawDocument], categories: Sequence[str],
                  n_train: int, n_test: int, seed: int) -> list[RawDocument]:
    """Seeded draw of ``n_train`` training and ``n_test`` test documents from ``categories``."""
    rng = np.random.default_rng(seed)
    wanted = set(categories)
    out = []
    for side, n in (("train", n_train), ("test", n_test)):
        pool = [d for d in docs if d.split == side and d.category in wanted]
        if n > len(pool):
            raise CorpusError(f"requested {n} {side} documents, only {len(pool)} available")
        picked = np.sort(rng.choice(len(pool), size=n, replace=False))
        out.extend(pool[i] for i in picked)
    return out


# -- preprocessing -----------------------------------------------------------

def load_stopwords(path=None) -> frozenset[str]:
    """One word per line; ``None`` loads the bundled English list."""
    if path is None:
        text = resources.files("lsaca").joinpath("data/stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def _identity(token: str) -> str:
    return token


def _resolve_lemmatizer(spec) -> Callable[[str], str]:
    if spec is None or spec is False or spec is True or spec == "identity":
        return _identity
    if callable(spec):
        return spec
    module, _, attr = str(spec).partition(":")
    if not attr:
        raise ValueError(f"lemmatizer must be 'module:function', got {spec!r}")
    return getattr(importlib.import_module(module), attr)


@dataclass(frozen=True)
class PreprocessConfig:
    lowercase: bool = True
    strip_punct: bool = True
    strip_numbers: bool = True
    stopword_path: str | None = None
    stopwords: frozenset[str] | None = None
    # bool, "module:function" or a callable; true/false/identity all mean no lemmatization
    lemmatize: object = False
    strip_headers: bool = False
    min_term_freq: int = 10
    seed: int = 0

    KEYS = ("lowercase", "strip_punct", "strip_numbers", "stopword_path", "lemmatize",
            "strip_headers", "min_term_freq", "seed")

    @classmethod
    def from_file(cls, path) -> "PreprocessConfig":
        path = Path(path)
        raw = path.read_bytes()
        data = tomllib.loads(raw.decode("utf-8")) if path.suffix == ".toml" else json.loads(raw)
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise ValueError(f"unknown preprocess config keys: {sorted(unknown)}")
        return cls(**data)

    def resolved_stopwords(self) -> frozenset[str]:
        if self.stopwords is not None:
            return self.stopwords
        return load_stopwords(self.stopword_path)

    def to_dict(self):
        lem = self.lemmatize
        return {
            "lowercase": self.lowercase,
            "strip_punct": self.strip_punct,
            "strip_numbers": self.strip_numbers,
            "stopword_path": self.stopword_path,
            "lemmatize": lem if isinstance(lem, (bool, str)) or lem is None else repr(lem),
            "strip_headers": self.strip_headers,
            "min_term_freq": self.min_term_freq,
            "seed": self.seed,
        }


def strip_message_headers(text: str) -> str:
    """Drop a leading mail header block and any stray header lines or e-mail addresses."""
    lines = text.splitlines()
    i = 0
    while i < len(lines) and _HEADER_LINE.match(lines[i]):
        i += 1
        # continuation lines of a folded header
        while i < len(lines) and lines[i][:1] in (" ", "\t") and lines[i].strip():
            i += 1
    body = [ln for ln in lines[i:] if not _HEADER_LINE.match(ln)]
    return _EMAIL.sub(" ", "\n".join(body))


def _token_char(ch: str, keep_digits: bool, keep_punct: bool) -> bool:
    cat = unicodedata.category(ch)
    if cat[0] == "L" or cat == "Mn":
        return True
    if cat[0] == "N":
        return keep_digits
    if cat[0] in "PS":
        return keep_punct
    return False


def tokenize(text: str, keep_digits: bool = False, keep_punct: bool = False) -> list[str]:
    """Split ``text`` on runs of characters that cannot belong to a token."""
    tokens, buf = [], []
    for ch in text:
        if _token_char(ch, keep_digits, keep_punct):
            buf.append(ch)
        elif buf:
            tokens.append("".join(buf))
            buf = []
    if buf:
        tokens.append("".join(buf))
    return tokens


class Preprocessor:
    """Reusable pipeline; resolves the stopword asset and lemmatizer once."""

    def __init__(self, config: PreprocessConfig | None = None):
        self.config = config or PreprocessConfig()
        self.stopwords = self.config.resolved_stopwords()
        self.lemmatizer = _resolve_lemmatizer(self.config.lemmatize)

    def __call__(self, doc: RawDocument | str) -> list[str]:
        cfg = self.config
        if isinstance(doc, RawDocument) and doc.tokens is not None:
            tokens = list(doc.tokens)
            if cfg.lowercase:
                tokens = [t.lower() for t in tokens]
        else:
            text = doc.text if isinstance(doc, RawDocument) else doc
            if text is None:
                raise CorpusError("document text is None")
            if cfg.strip_headers:
                text = strip_message_headers(text)
            if cfg.lowercase:
                text = text.lower()
            tokens = tokenize(text, keep_digits=not cfg.strip_numbers,
                              keep_punct=not cfg.strip_punct)
        if self.stopwords:
            tokens = [t for t in tokens if t not in self.stopwords]
        if self.lemmatizer is not _identity:
            tokens = [self.lemmatizer(t) for t in tokens]
            tokens = [t for t in tokens if t]
        return tokens


def preprocess(doc: RawDocument | str, config: PreprocessConfig | None = None) -> list[str]:
    return Preprocessor(config)(doc)


# -- matrix construction -----------------------------------------------------

def build_matrix(docs: Iterable[tuple[Sequence[str], str, str]], min_term_freq: int = 10,
                 splits: Sequence[str | None] | None = None) -> DocumentTermMatrix:
    """Count matrix from ``(tokens, doc_id, category)`` triples.

    Terms whose total corpus frequency is below ``min_term_freq`` are dropped,
    then documents left without any retained token. Columns are ordered
    lexicographically.
    """
    if min_term_freq < 1:
        raise ValueError("min_term_freq must be >= 1")
    docs = list(docs)
    if not docs:
        raise CorpusError("no documents")
    if splits is not None and len(splits) != len(docs):
        raise ValueError("splits must align with docs")

    bags = [Counter(tokens) for tokens, _, _ in docs]
    total = Counter()
    for bag in bags:
        total.update(bag)
    terms = sorted(t for t, c in total.items() if c >= min_term_freq)
    index = {t: j for j, t in enumerate(terms)}

    rows, cols, vals, kept, dropped_docs = [], [], [], [], []
    for pos, ((tokens, doc_id, category), bag) in enumerate(zip(docs, bags)):
        entries = sorted((index[t], c) for t, c in bag.items() if t in index)
        if not entries:
            dropped_docs.append(doc_id)
            continue
        r = len(kept)
        kept.append(pos)
        for j, c in entries:
            rows.append(r)
            cols.append(j)
            vals.append(c)
    if not kept:
        raise CorpusError(
            f"corpus collapse: no document retains a term with frequency >= {min_term_freq}")
    if dropped_docs:
        logger.warning("dropped %d documents emptied by preprocessing/cutoff", len(dropped_docs))

    counts = sp.csr_matrix((np.asarray(vals, dtype=np.int64), (rows, cols)),
                           shape=(len(kept), len(terms)))
    counts.sort_indices()
    df = np.diff(counts.tocsc().indptr)
    vocab = Vocabulary(tuple(terms), tuple(int(x) for x in df))
    report = DropReport(min_term_freq, len(total) - len(terms), tuple(dropped_docs))
    return DocumentTermMatrix(
        counts=counts,
        doc_ids=tuple(docs[i][1] for i in kept),
        categories=tuple(docs[i][2] for i in kept),
        vocabulary=vocab,
        drop_report=report,
        splits=None if splits is None else tuple(splits[i] for i in kept),
    )


def ingest(path, format: str = "tree", config: PreprocessConfig | None = None,
           subset: dict | None = None) -> DocumentTermMatrix:
    """load_dataset + preprocess + build_matrix in one call.

    ``subset`` optionally holds ``select_subset`` keyword arguments
    (``categories``, ``n_train``, ``n_test``); the draw uses ``config.seed``.
    """
    config = config or PreprocessConfig()
    docs = load_dataset(path, format)
    if subset:
        docs = select_subset(docs, seed=config.seed, **subset)
    pipeline = Preprocessor(config)
    triples = [(pipeline(d), d.id, d.category) for d in docs]
    splits = [d.split for d in docs] if any(d.split for d in docs) else None
    return build_matrix(triples, config.min_term_freq, splits=splits)


# -- fixtures ----------------------------------------------------------------

TOY_TERMS = ("lion", "tiger", "cheetah", "jaguar", "porsche", "ferrari")
TOY_COUNTS = (
    (2, 2, 1, 2, 0, 0),
    (2, 3, 3, 3, 0, 0),
    (1, 1, 1, 1, 0, 0),
    (2, 2, 2, 3, 1, 1),
    (0, 0, 0, 1, 1, 1),
    (0, 0, 0, 2, 1, 2),
)
TOY_CATEGORIES = ("cat", "cat", "cat", "mixed", "car", "car")


def toy_matrix() -> DocumentTermMatrix:
    """The six-document cat/car corpus with the polysemous term *jaguar*."""
    counts = sp.csr_matrix(np.array(TOY_COUNTS, dtype=np.int64))
    df = tuple(int(x) for x in (np.array(TOY_COUNTS) > 0).sum(axis=0))
    return DocumentTermMatrix(
        counts=counts,
        doc_ids=tuple(f"doc{i}" for i in range(1, 7)),
        categories=TOY_CATEGORIES,
        vocabulary=Vocabulary(TOY_TERMS, df),
    )


def toy_documents() -> list[tuple[list[str], str, str]]:
    """Token lists whose counts reproduce :func:`toy_matrix` exactly."""
    out = []
    for i, row in enumerate(TOY_COUNTS):
        tokens = [t for t, c in zip(TOY_TERMS, row) for _ in range(c)]
        out.append((tokens, f"doc{i + 1}", TOY_CATEGORIES[i]))
    return out


def _letter_name(j: int, width: int = 4) -> str:
    # digit-free, fixed width, so names survive tokenization and sort like j
    letters = []
    for _ in range(width):
        j, r = divmod(j, 26)
        letters.append(chr(ord("a") + r))
    return "z" + "".join(reversed(letters))


def make_synthetic_corpus(n_docs: int = 200, n_categories: int = 5, n_terms: int = 400,
                          mean_length: float = 120.0, topic_share: float = 0.35,
                          seed: int = 0) -> DocumentTermMatrix:
    """Random labelled corpus for tests and smoke runs.

    Each category owns a block of topical terms; every document mixes its
    category's topical distribution with a shared Zipf background, and
    document lengths vary log-normally so margins carry no label signal.
    """
    rng = np.random.default_rng(seed)
    background = 1.0 / np.arange(1, n_terms + 1) ** 1.1
    background /= background.sum()
    topics = []
    block = n_terms // (n_categories + 1)
    for c in range(n_categories):
        w = np.full(n_terms, 1e-3)
        w[block * (c + 1): block * (c + 2)] = rng.gamma(0.6, 1.0, size=block) + 1e-3
        topics.append(w / w.sum())
    labels = np.arange(n_docs) % n_categories
    rng.shuffle(labels)
    rows = []
    for c in labels:
        length = max(5, int(rng.lognormal(np.log(mean_length), 0.6)))
        share = np.clip(rng.normal(topic_share, 0.1), 0.05, 0.9)
        p = share * topics[c] + (1 - share) * background
        rows.append(rng.multinomial(length, p))
    counts = np.asarray(rows, dtype=np.int64)
    keep = counts.sum(axis=0) > 0
    counts = counts[:, keep]
    terms = tuple(_letter_name(j) for j in np.flatnonzero(keep))
    df = tuple(int(x) for x in (counts > 0).sum(axis=0))
    return DocumentTermMatrix(
        counts=sp.csr_matrix(counts),
        doc_ids=tuple(f"d{i:04d}" for i in range(n_docs)),
        categories=tuple(f"c{c}" for c in labels),
        vocabulary=Vocabulary(terms, df),
    )


def write_tree(matrix: DocumentTermMatrix, root) -> Path:
    """Materialize a matrix as a ``tree`` layout (one token per occurrence)."""
    root = Path(root)
    dense = matrix.counts.toarray()
    for i, (doc_id, cat) in enumerate(zip(matrix.doc_ids, matrix.categories)):
        d = root / cat
        d.mkdir(parents=True, exist_ok=True)
        words = [t for t, c in zip(matrix.vocabulary.terms, dense[i]) for _ in range(int(c))]
        (d / f"{doc_id.replace('/', '_')}.txt").write_text(" ".join(words) + "\n", encoding="utf-8")
    return root


__all__ = [
    "CorpusError", "RawDocument", "Vocabulary", "DocumentTermMatrix", "DropReport",
    "PreprocessConfig", "Preprocessor", "load_dataset", "select_subset", "load_stopwords",
    "preprocess", "tokenize", "strip_message_headers", "build_matrix", "ingest",
    "toy_matrix", "toy_documents", "make_synthetic_corpus", "write_tree",
]
