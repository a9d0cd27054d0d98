"""Most-frequent-word vocabularies and relative-frequency feature matrices.

The feature space is the classic stylometric one: take the top-N words of
the whole corpus by frequency, represent each document as the relative
frequency of each vocabulary word, and z-score each column so that the
distance metrics weight common and rare vocabulary words alike.
"""

from __future__ import annotations

import io
import warnings
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .corpus import Corpus, Document
from .errors import EmptyDocumentWarning

DEFAULT_N_MFW = 200
DEFAULT_CULLING = 0.0


def _documents(corpus: Corpus | Sequence[Document]) -> tuple[Document, ...]:
    if isinstance(corpus, Corpus):
        return corpus.documents
    return tuple(corpus)


@dataclass(frozen=True)
class Vocabulary:
    """Distinct tokens ordered by descending corpus frequency, ties lexicographic."""

    words: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.words)

    @cached_property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    def __contains__(self, word: str) -> bool:
        return word in self.index


def build_vocabulary(
    corpus: Corpus | Sequence[Document],
    n_mfw: int = DEFAULT_N_MFW,
    culling: float = DEFAULT_CULLING,
) -> Vocabulary:
    """Build the top-``n_mfw`` word list for a corpus.

    Words appearing in fewer than ``culling * n_documents`` documents are
    removed before truncation. Ordering is deterministic: descending total
    count, ties broken lexicographically, so document load order never
    changes the vocabulary.
    """
    docs = _documents(corpus)
    if not docs:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    if n_mfw < 1:
        raise ValueError(f"n_mfw must be positive, got {n_mfw}")
    if not 0.0 <= culling <= 1.0:
        raise ValueError(f"culling must be in [0, 1], got {culling}")
    totals: Counter[str] = Counter()
    doc_counts: Counter[str] = Counter()
    for doc in docs:
        totals.update(doc.tokens)
        doc_counts.update(set(doc.tokens))
    min_docs = culling * len(docs)
    kept = [w for w in totals if doc_counts[w] >= min_docs]
    kept.sort(key=lambda w: (-totals[w], w))
    return Vocabulary(words=tuple(kept[:n_mfw]))


def vectorize(doc: Document, vocab: Vocabulary) -> np.ndarray:
    """Relative frequency of each vocabulary word in the document.

    Entry i is count(vocab[i]) / total tokens. A document with no tokens
    yields a zero vector and an EmptyDocumentWarning.
    """
    vec = np.zeros(vocab.size, dtype=np.float64)
    if not doc.tokens:
        warnings.warn(
            f"document {doc.id!r} has no tokens; vectorized as zeros",
            EmptyDocumentWarning,
            stacklevel=2,
        )
        return vec
    counts = Counter(doc.tokens)
    total = len(doc.tokens)
    for word, count in counts.items():
        idx = vocab.index.get(word)
        if idx is not None:
            vec[idx] = count / total
    return vec


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Documents x vocabulary-word relative frequencies.

    ``col_mean`` and ``col_std`` (population std, divide by N) are computed
    over the rows; columns with zero std are flagged and map to z = 0.
    """

    doc_ids: tuple[str, ...]
    vocabulary: Vocabulary
    values: np.ndarray
    empty_doc_ids: frozenset[str] = frozenset()
    standardized: bool = False

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.doc_ids), self.vocabulary.size):
            raise ValueError(
                f"matrix shape {self.values.shape} does not match "
                f"{len(self.doc_ids)} documents x {self.vocabulary.size} words"
            )
        if len(set(self.doc_ids)) != len(self.doc_ids):
            raise ValueError("duplicate document ids in feature matrix")

    @cached_property
    def row_index(self) -> dict[str, int]:
        return {doc_id: i for i, doc_id in enumerate(self.doc_ids)}

    def row(self, doc_id: str) -> np.ndarray:
        if doc_id not in self.row_index:
            raise ValueError(f"document {doc_id!r} missing from feature matrix")
        return self.values[self.row_index[doc_id]]

    @cached_property
    def col_mean(self) -> np.ndarray:
        return self.values.mean(axis=0)

    @cached_property
    def col_std(self) -> np.ndarray:
        return self.values.std(axis=0)  # population std

    @cached_property
    def constant_columns(self) -> np.ndarray:
        return self.col_std == 0.0

    def zscores(self) -> np.ndarray:
        """Z-scored values; zero-std columns are 0 everywhere."""
        if self.standardized:
            return self.values
        if len(self.doc_ids) < 2:
            raise ValueError("z-scoring needs at least 2 rows")
        std = np.where(self.constant_columns, 1.0, self.col_std)
        z = (self.values - self.col_mean) / std
        z[:, self.constant_columns] = 0.0
        return z

    def to_csv(self) -> str:
        """Header = vocabulary, one row per document id."""
        buf = io.StringIO()
        buf.write("id," + ",".join(self.vocabulary.words) + "\n")
        for doc_id, row in zip(self.doc_ids, self.values):
            buf.write(doc_id + "," + ",".join(repr(v) for v in row) + "\n")
        return buf.getvalue()


def build_feature_matrix(
    documents: Sequence[Document], vocab: Vocabulary
) -> FeatureMatrix:
    """Stack vectorize() rows for the given documents, in order."""
    docs = tuple(documents)
    values = np.zeros((len(docs), vocab.size), dtype=np.float64)
    empty = set()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyDocumentWarning)
        for i, doc in enumerate(docs):
            if not doc.tokens:
                empty.add(doc.id)
            values[i] = vectorize(doc, vocab)
    return FeatureMatrix(
        doc_ids=tuple(d.id for d in docs),
        vocabulary=vocab,
        values=values,
        empty_doc_ids=frozenset(empty),
    )


def zscore(matrix: FeatureMatrix) -> FeatureMatrix:
    """Standardize a matrix column-wise: v -> (v - mean) / std.

    Zero-std columns map to 0 for every row. A single-row matrix has no
    defined std and is rejected.
    """
    return FeatureMatrix(
        doc_ids=matrix.doc_ids,
        vocabulary=matrix.vocabulary,
        values=matrix.zscores(),
        empty_doc_ids=matrix.empty_doc_ids,
        standardized=True,
    )
