"""General Imposters authorship verification.

A test text is repeatedly compared, under random feature subsets, against
the candidate author's documents (D) and a pool of other-author imposter
documents (P). Each iteration the candidate "wins" if the test text is
closer to some candidate document than to every imposter document; the
verification score is the fraction of iterations won, in [0, 1].

Determinism contract: every iteration draws its feature subset from an
independent RNG stream derived from (seed, iteration), so a run produces
bit-identical results whether iterations execute serially or in parallel.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from math import ceil
from typing import Sequence

import numpy as np

from .corpus import Document
from .distance import Metric
from .errors import VerificationError
from .features import (
    DEFAULT_CULLING,
    DEFAULT_N_MFW,
    FeatureMatrix,
    Vocabulary,
    build_feature_matrix,
    build_vocabulary,
)

REPORT_SCHEMA_VERSION = 1

DEFAULT_ITERATIONS = 100
DEFAULT_FEATURE_FRACTION = 0.5
DEFAULT_THETA = 0.5
DEFAULT_SUSPICIOUS_LOW = 0.39
DEFAULT_SUSPICIOUS_HIGH = 0.63
DEFAULT_SEED = 42


class Verdict(Enum):
    SUCCEEDED = "succeeded"
    SUSPICIOUS = "suspicious"
    FAILED = "failed"


@dataclass(frozen=True)
class ImpostersConfig:
    """Knobs for one verification run; defaults suit desk-scale corpora."""

    iterations: int = DEFAULT_ITERATIONS
    feature_fraction: float = DEFAULT_FEATURE_FRACTION
    metric: Metric = Metric.BURROWS_DELTA
    theta: float = DEFAULT_THETA
    suspicious_low: float = DEFAULT_SUSPICIOUS_LOW
    suspicious_high: float = DEFAULT_SUSPICIOUS_HIGH
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise VerificationError(f"iterations must be >= 1, got {self.iterations}")
        if not 0.0 < self.feature_fraction <= 1.0:
            raise VerificationError(
                f"feature_fraction must be in (0, 1], got {self.feature_fraction}"
            )
        if not 0.0 <= self.theta <= 1.0:
            raise VerificationError(f"theta must be in [0, 1], got {self.theta}")
        if not self.suspicious_low < self.suspicious_high:
            raise VerificationError(
                f"suspicious band is empty: "
                f"[{self.suspicious_low}, {self.suspicious_high}]"
            )
        if self.seed < 0:
            raise VerificationError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class VerificationScore:
    """Score in [0, 1] plus verdict and the per-iteration win record."""

    value: float
    verdict: Verdict
    wins: tuple[bool, ...]
    config: ImpostersConfig


@dataclass(frozen=True)
class FirstOrderScores:
    """Distance tables between candidate documents and the imposter pool."""

    candidate_ids: tuple[str, ...]
    imposter_ids: tuple[str, ...]
    cross: np.ndarray  # |D| x |P| distances
    intra_pairs: tuple[tuple[str, str], ...]  # all |D| choose 2 pairs
    intra: np.ndarray


def verdict(value: float, config: ImpostersConfig | None = None) -> Verdict:
    """Map a score to Succeeded / Suspicious / Failed.

    The suspicious band takes precedence: any score inside it is
    Suspicious even when it also clears theta. Outside the band, the
    theta rule decides, with an exact hit on theta counting as Suspicious.
    """
    cfg = config or ImpostersConfig()
    if not 0.0 <= value <= 1.0:
        raise VerificationError(f"score must be in [0, 1], got {value}")
    if cfg.suspicious_low <= value <= cfg.suspicious_high:
        return Verdict.SUSPICIOUS
    if value > cfg.suspicious_high:
        return Verdict.SUCCEEDED
    if value > cfg.theta:
        return Verdict.SUCCEEDED
    if value < cfg.theta:
        return Verdict.FAILED
    return Verdict.SUSPICIOUS


def _metric_rows(test_row: np.ndarray, rows: np.ndarray, metric: Metric) -> np.ndarray:
    if metric is Metric.BURROWS_DELTA:
        return np.abs(rows - test_row).mean(axis=1)
    return np.array([metric.compute(test_row, r) for r in rows])


def first_order_scores(
    candidates: Sequence[Document],
    imposters: Sequence[Document],
    matrix: FeatureMatrix,
    metric: Metric = Metric.BURROWS_DELTA,
) -> FirstOrderScores:
    """Full |D| x |P| distance table on z-vectors, plus all intra-D distances."""
    if not candidates or not imposters:
        raise VerificationError("candidate and imposter sets must both be nonempty")
    z = matrix.zscores()
    d_ids = tuple(d.id for d in candidates)
    p_ids = tuple(p.id for p in imposters)
    d_rows = np.stack([z[_row(matrix, i)] for i in d_ids])
    p_rows = np.stack([z[_row(matrix, i)] for i in p_ids])
    cross = np.zeros((len(d_ids), len(p_ids)))
    for i, drow in enumerate(d_rows):
        cross[i] = _metric_rows(drow, p_rows, metric)
    pairs = []
    intra = []
    for i in range(len(d_ids)):
        for j in range(i + 1, len(d_ids)):
            pairs.append((d_ids[i], d_ids[j]))
            intra.append(metric.compute(d_rows[i], d_rows[j]))
    return FirstOrderScores(
        candidate_ids=d_ids,
        imposter_ids=p_ids,
        cross=cross,
        intra_pairs=tuple(pairs),
        intra=np.array(intra),
    )


def _row(matrix: FeatureMatrix, doc_id: str) -> int:
    if doc_id not in matrix.row_index:
        raise VerificationError(f"document {doc_id!r} missing from feature matrix")
    return matrix.row_index[doc_id]


def iteration_feature_subset(
    seed: int, iteration: int, n_features: int, feature_fraction: float
) -> np.ndarray:
    """Feature column subset drawn by one iteration's private RNG stream.

    The stream is seeded from (seed, iteration), so subsets are identical
    no matter how many iterations run or in which order.
    """
    n_sub = ceil(feature_fraction * n_features)
    if n_sub < 1:
        raise VerificationError(
            f"feature_fraction {feature_fraction} yields no columns "
            f"out of {n_features}"
        )
    rng = np.random.default_rng((seed, iteration))
    return rng.choice(n_features, size=n_sub, replace=False)


def imposters_score(
    test: Document,
    candidates: Sequence[Document],
    imposters: Sequence[Document],
    matrix: FeatureMatrix,
    config: ImpostersConfig | None = None,
    parallel: bool = False,
) -> VerificationScore:
    """Run the feature-subsampled verification and score the candidate.

    Each iteration draws ceil(feature_fraction * n_features) columns of the
    z-scored matrix and asks whether the test row is strictly closer to the
    nearest candidate row than to the nearest imposter row; ties count as a
    loss. Column statistics come from every row of the matrix.
    """
    cfg = config or ImpostersConfig()
    if not candidates:
        raise VerificationError("candidate set is empty")
    if not imposters:
        raise VerificationError("imposter set is empty")
    d_ids = {d.id for d in candidates}
    p_ids = {p.id for p in imposters}
    if test.id in d_ids or test.id in p_ids:
        raise VerificationError(
            f"test document {test.id!r} must not appear in the candidate "
            f"or imposter sets"
        )
    z = matrix.zscores()
    t = z[_row(matrix, test.id)]
    zd = np.stack([z[_row(matrix, d.id)] for d in candidates])
    zp = np.stack([z[_row(matrix, p.id)] for p in imposters])
    n_features = matrix.vocabulary.size
    if n_features < 1:
        raise VerificationError("feature matrix has no columns")

    def one_iteration(i: int) -> bool:
        cols = iteration_feature_subset(
            cfg.seed, i, n_features, cfg.feature_fraction
        )
        d_min = _metric_rows(t[cols], zd[:, cols], cfg.metric).min()
        p_min = _metric_rows(t[cols], zp[:, cols], cfg.metric).min()
        return bool(d_min < p_min)

    if parallel:
        with ThreadPoolExecutor() as pool:
            wins = tuple(pool.map(one_iteration, range(cfg.iterations)))
    else:
        wins = tuple(one_iteration(i) for i in range(cfg.iterations))
    value = sum(wins) / cfg.iterations
    return VerificationScore(
        value=value, verdict=verdict(value, cfg), wins=wins, config=cfg
    )


def verify_document(
    test: Document,
    candidates: Sequence[Document],
    imposters: Sequence[Document],
    config: ImpostersConfig | None = None,
    n_mfw: int = DEFAULT_N_MFW,
    culling: float = DEFAULT_CULLING,
    vocabulary: Vocabulary | None = None,
    parallel: bool = False,
) -> VerificationScore:
    """End-to-end verification: vocabulary, feature matrix, imposters score.

    The vocabulary is built over candidates + imposters + test unless one
    is supplied (a sweep fixes the vocabulary of its clean sample so that
    fragment tokens drain the signal instead of reshaping the feature
    space).
    """
    docs = tuple(candidates) + tuple(imposters) + (test,)
    vocab = vocabulary or build_vocabulary(docs, n_mfw=n_mfw, culling=culling)
    matrix = build_feature_matrix(docs, vocab)
    return imposters_score(test, candidates, imposters, matrix, config, parallel)


def rank_candidates(
    documents: Sequence[Document],
    test: Document,
    config: ImpostersConfig | None = None,
    n_mfw: int = DEFAULT_N_MFW,
    culling: float = DEFAULT_CULLING,
    parallel: bool = False,
) -> list[tuple[str, VerificationScore]]:
    """Score every author of `documents` as the candidate for one test text.

    All runs share one vocabulary and feature matrix built over every
    document plus the test text, so scores are comparable. Returns
    (author, score) pairs sorted by descending score, then author.
    """
    pool = [d for d in documents if d.id != test.id]
    if not pool:
        raise VerificationError("no documents to rank against")
    vocab = build_vocabulary(tuple(pool) + (test,), n_mfw=n_mfw, culling=culling)
    matrix = build_feature_matrix(tuple(pool) + (test,), vocab)
    results = []
    for author in sorted({d.author for d in pool}):
        candidates = [d for d in pool if d.author == author]
        imposters = [d for d in pool if d.author != author]
        if not imposters:
            raise VerificationError(
                f"cannot rank {author!r}: no other-author documents to "
                f"serve as imposters"
            )
        score = imposters_score(test, candidates, imposters, matrix, config, parallel)
        results.append((author, score))
    results.sort(key=lambda pair: (-pair[1].value, pair[0]))
    return results


def verification_report(
    score: VerificationScore,
    test_id: str,
    candidate_author: str,
    n_features: int | None = None,
    ranking: Sequence[tuple[str, VerificationScore]] | None = None,
) -> dict:
    """JSON-ready report with a stable schema and the effective config."""
    cfg = score.config
    report = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "test_id": test_id,
        "candidate_author": candidate_author,
        "score": score.value,
        "verdict": score.verdict.value,
        "iterations": cfg.iterations,
        "feature_fraction": cfg.feature_fraction,
        "metric": cfg.metric.value,
        "theta": cfg.theta,
        "suspicious_band": [cfg.suspicious_low, cfg.suspicious_high],
        "seed": cfg.seed,
    }
    if n_features is not None:
        report["n_features"] = n_features
    if ranking is not None:
        report["ranking"] = [
            {"author": author, "score": s.value, "verdict": s.verdict.value}
            for author, s in ranking
        ]
    return report
