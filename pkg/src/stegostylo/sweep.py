"""Coverage sweep: how much injection does it take to defeat verification?

For a sample with W eligible words, generate W+1 variants (k = 0..W
injected words), verify each against the same candidate/imposter split,
and characterize the score-vs-coverage curve: the knee is the first
coverage from which every verdict is Failed, the floor the first coverage
from which the score stays at (near) zero.

The vocabulary is built once, from the candidate, imposter, and clean
sample documents. Variants are vectorized against that fixed vocabulary,
so fragment tokens drain the frequency signal instead of reshaping the
feature space. All rows share one RNG seed: score differences reflect
coverage, not sampling noise.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .corpus import Document
from .errors import StegoStyloError, SweepError
from .features import DEFAULT_CULLING, DEFAULT_N_MFW, build_vocabulary
from .imposters import ImpostersConfig, Verdict, verify_document
from .zwsteg import DEFAULT_CHARSET, InjectionMode, eligible_word_count, inject_k

FLOOR_THRESHOLD = 0.005

SWEEP_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SweepRow:
    k: int
    coverage_pct: int
    score: float | None
    verdict: Verdict | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    knee: int | None  # first coverage from which every verdict is Failed
    floor: int | None  # first coverage from which score stays <= FLOOR_THRESHOLD


def coverage_label(k: int, w: int) -> int:
    """Display percentage for k of w words: floor(100k/w), with k = w as 100."""
    if k == w:
        return 100
    return math.floor(100 * k / w)


def knee_analysis(rows: Sequence[SweepRow]) -> tuple[int | None, int | None]:
    """Locate the knee and floor of a sweep.

    knee: smallest coverage whose row and all later rows have verdict
    Failed. floor: smallest coverage from which every score is <=
    FLOOR_THRESHOLD. Rows that errored break both runs.
    """
    knee = None
    floor = None
    for row in reversed(rows):
        if row.verdict is Verdict.FAILED:
            knee = row.coverage_pct
        else:
            break
    for row in reversed(rows):
        if row.score is not None and row.score <= FLOOR_THRESHOLD:
            floor = row.coverage_pct
        else:
            break
    return knee, floor


def run_sweep(
    sample: Document,
    candidates: Sequence[Document],
    imposters: Sequence[Document],
    config: ImpostersConfig | None = None,
    mode: InjectionMode = InjectionMode.PREFIX,
    injection_seed: int | None = None,
    charset=DEFAULT_CHARSET,
    n_mfw: int = DEFAULT_N_MFW,
    culling: float = DEFAULT_CULLING,
    parallel: bool = False,
) -> SweepResult:
    """Verify every injection variant of a sample, k = 0 (control) to W (full).

    A row that fails (corpus or verification error) is recorded with its
    message instead of aborting the sweep.
    """
    cfg = config or ImpostersConfig()
    used = {d.id for d in candidates} | {d.id for d in imposters}
    if sample.id in used:
        raise SweepError(
            f"sample {sample.id!r} must not appear in the candidate or "
            f"imposter sets"
        )
    w = eligible_word_count(sample.text)
    if w < 1:
        raise SweepError("sample has no eligible words (length >= 2)")
    vocab = build_vocabulary(
        tuple(candidates) + tuple(imposters) + (sample,), n_mfw=n_mfw, culling=culling
    )
    rows = []
    for k in range(w + 1):
        pct = coverage_label(k, w)
        stego, _ = inject_k(sample.text, k, mode=mode, seed=injection_seed, charset=charset)
        variant = Document(
            id=f"{sample.id}_{pct:03d}",
            author=sample.author,
            text=stego,
            title=sample.title,
        )
        try:
            score = verify_document(
                variant,
                candidates,
                imposters,
                cfg,
                vocabulary=vocab,
                parallel=parallel,
            )
        except StegoStyloError as exc:
            rows.append(SweepRow(k=k, coverage_pct=pct, score=None, verdict=None, error=str(exc)))
            continue
        rows.append(
            SweepRow(k=k, coverage_pct=pct, score=score.value, verdict=score.verdict)
        )
    knee, floor = knee_analysis(rows)
    return SweepResult(rows=tuple(rows), knee=knee, floor=floor)


def export(result: SweepResult, format: str = "csv") -> bytes:
    """Serialize a sweep: csv, json (lossless), or gnuplot-data (two columns)."""
    if format == "csv":
        buf = io.StringIO()
        buf.write("k,coverage_pct,score,verdict\n")
        for row in result.rows:
            score = "" if row.score is None else repr(row.score)
            verdict = "error" if row.verdict is None else row.verdict.value
            buf.write(f"{row.k},{row.coverage_pct},{score},{verdict}\n")
        return buf.getvalue().encode("utf-8")
    if format == "json":
        payload = {
            "schema_version": SWEEP_SCHEMA_VERSION,
            "rows": [
                {
                    "k": row.k,
                    "coverage_pct": row.coverage_pct,
                    "score": row.score,
                    "verdict": None if row.verdict is None else row.verdict.value,
                    "error": row.error,
                }
                for row in result.rows
            ],
            "knee": result.knee,
            "floor": result.floor,
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
    if format == "gnuplot-data":
        lines = ["# coverage_pct score"]
        for row in result.rows:
            if row.score is not None:
                lines.append(f"{row.coverage_pct} {row.score!r}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise SweepError(f"unknown export format {format!r}")


def sweep_result_from_json(data: bytes | str) -> SweepResult:
    """Inverse of export(..., 'json')."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    payload = json.loads(data)
    rows = tuple(
        SweepRow(
            k=row["k"],
            coverage_pct=row["coverage_pct"],
            score=row["score"],
            verdict=None if row["verdict"] is None else Verdict(row["verdict"]),
            error=row.get("error"),
        )
        for row in payload["rows"]
    )
    return SweepResult(rows=rows, knee=payload["knee"], floor=payload["floor"])
