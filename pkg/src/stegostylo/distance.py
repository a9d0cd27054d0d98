"""Stylometric distance metrics between feature vectors."""

from __future__ import annotations

from enum import Enum

import numpy as np


def _pair(v1, v2) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(v1, dtype=np.float64)
    b = np.asarray(v2, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("distance metrics expect 1-D vectors")
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[0] == 0:
        raise ValueError("empty vectors have no distance")
    return a, b


def burrows_delta(z1, z2) -> float:
    """Mean absolute difference between two z-scored vectors.

    Using the mean (not the sum) keeps values comparable across feature
    subsets of different sizes.
    """
    a, b = _pair(z1, z2)
    return float(np.mean(np.abs(a - b)))


def cosine_distance(v1, v2) -> float:
    """1 - cosine similarity; in [0, 2]. Zero vectors are rejected."""
    a, b = _pair(v1, v2)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine distance is undefined for a zero vector")
    sim = float(np.dot(a, b) / (na * nb))
    return float(min(max(1.0 - sim, 0.0), 2.0))


class Metric(Enum):
    BURROWS_DELTA = "burrows_delta"
    COSINE = "cosine"

    def compute(self, v1, v2) -> float:
        if self is Metric.BURROWS_DELTA:
            return burrows_delta(v1, v2)
        return cosine_distance(v1, v2)
