"""Deterministic synthetic corpora for exercising the verification pipeline.

Real author-labeled collections are large and encumbered; these builders
produce small artificial ones with controllable stylistic structure:

- every author owns a content-word pool with a Zipf-shaped usage profile;
- a shared function-word pool appears in (almost) every document;
- one deliberately bland "laconic" author writes mostly one-off filler
  words, so their in-vocabulary usage sits strictly below everyone
  else's on every feature column -- the kind of stylistically diffuse
  imposter that catches a test text once its vocabulary signal drains.

All words are synthetic letter strings with per-pool initial letters and
lengths chosen so that no infix fragment of any word can collide with a
vocabulary word. Generation is fully deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Document

# pool initials; body letters exclude all of them so no word fragment
# (which starts mid-word or at a pool initial but shorter) matches
# another pool's words
_BODY_ALPHABET = "abcdefgiou"
_FUNCTION_INITIAL = "t"
_FILLER_INITIAL = "x"


def _zipf(n: int) -> np.ndarray:
    w = 1.0 / np.arange(1, n + 1)
    return w / w.sum()


def _make_pool(initial: str, count: int, length: int, rng: np.random.Generator) -> tuple[str, ...]:
    words: list[str] = []
    seen = set()
    while len(words) < count:
        body = "".join(rng.choice(list(_BODY_ALPHABET), size=length - 1))
        word = initial + body
        if word not in seen:
            seen.add(word)
            words.append(word)
    return tuple(words)


def _filler_words(start: int, count: int, length: int = 6) -> list[str]:
    """Deterministic enumeration of one-off filler words, distinct corpus-wide."""
    base = len(_BODY_ALPHABET)
    words = []
    for idx in range(start, start + count):
        digits = []
        value = idx
        for _ in range(length - 1):
            value, digit = divmod(value, base)
            digits.append(_BODY_ALPHABET[digit])
        words.append(_FILLER_INITIAL + "".join(digits))
    return words


def _allocate(total: int, weights: np.ndarray) -> np.ndarray:
    """Largest-remainder allocation of `total` tokens over weights."""
    raw = total * weights
    counts = np.floor(raw).astype(int)
    remainder = total - counts.sum()
    order = np.argsort(-(raw - counts), kind="stable")
    counts[order[:remainder]] += 1
    return counts


def _compose(
    rng: np.random.Generator,
    parts: list[tuple[tuple[str, ...], np.ndarray, int]],
    extra_words: list[str] | None = None,
    min_one: bool = True,
    jitter: int = 2,
) -> str:
    """One document's text: allocated pool counts, jittered, shuffled."""
    tokens: list[str] = []
    for pool, weights, n_tokens in parts:
        counts = _allocate(n_tokens, weights)
        if min_one:
            counts = np.maximum(counts, 1)
        if jitter:
            counts = counts + rng.integers(0, jitter + 1, size=len(pool))
        for word, count in zip(pool, counts):
            tokens.extend([word] * int(count))
    if extra_words:
        tokens.extend(extra_words)
    order = rng.permutation(len(tokens))
    return " ".join(tokens[i] for i in order)


@dataclass(frozen=True)
class SeparableCorpus:
    """Two authors with fully disjoint vocabularies, plus held-out tests."""

    candidates: tuple[Document, ...]  # author "aqua"
    imposters: tuple[Document, ...]  # author "bryn"
    same_author_test: Document  # fresh aqua text
    cross_author_test: Document  # fresh bryn text

    @property
    def all_documents(self) -> tuple[Document, ...]:
        return self.candidates + self.imposters


def separable_corpus(
    n_docs_per_author: int = 5, tokens_per_doc: int = 500, seed: int = 97
) -> SeparableCorpus:
    """Desk-scale corpus where same-author and cross-author tests are clear-cut."""
    rng = np.random.default_rng(seed)
    pool_a = _make_pool("k", 40, 6, rng)
    pool_b = _make_pool("z", 40, 6, rng)
    weights = _zipf(40)

    def author_doc(pool, author, index):
        return Document(
            id=f"{author}_{index:02d}",
            author=author,
            title=f"{index:02d}",
            text=_compose(rng, [(pool, weights, tokens_per_doc)]),
        )

    candidates = tuple(author_doc(pool_a, "aqua", i) for i in range(1, n_docs_per_author + 1))
    imposters = tuple(author_doc(pool_b, "bryn", i) for i in range(1, n_docs_per_author + 1))
    same = author_doc(pool_a, "aqua", 90)
    cross = author_doc(pool_b, "bryn", 90)
    return SeparableCorpus(
        candidates=candidates,
        imposters=imposters,
        same_author_test=same,
        cross_author_test=cross,
    )


@dataclass(frozen=True)
class ReplicationCorpus:
    """Multi-author corpus shaped for coverage sweeps.

    Candidate "vela" plus two ordinary imposter authors and the laconic
    "fleet"; the sample is a fresh vela text meant to be injected.
    """

    candidates: tuple[Document, ...]
    imposters: tuple[Document, ...]
    sample: Document
    n_mfw: int  # vocabulary size that exactly covers the core pools

    @property
    def all_documents(self) -> tuple[Document, ...]:
        return self.candidates + self.imposters


def replication_corpus(
    seed: int = 811,
    tokens_per_doc: int = 480,
    sample_tokens: int = 120,
    function_share: float = 0.45,
    laconic_function_share: float = 0.15,
) -> ReplicationCorpus:
    """Corpus where injection coverage drives verification from pass to fail.

    The function pool (8 words) plus three 64-word content pools come to
    exactly 200 distinct core words, each appearing at least once per
    owning document, while fleet's filler words appear exactly once in
    the whole corpus. With n_mfw = 200 the vocabulary is therefore
    exactly the core: fleet's in-vocabulary usage is strictly below every
    other document's on every column.
    """
    rng = np.random.default_rng(seed)
    function_pool = _make_pool(_FUNCTION_INITIAL, 8, 4, rng)
    pool_vela = _make_pool("k", 64, 6, rng)
    pool_quill = _make_pool("m", 64, 6, rng)
    pool_sable = _make_pool("z", 64, 6, rng)
    f_weights = _zipf(8)
    c_weights = _zipf(64)
    n_function = round(function_share * tokens_per_doc)
    n_content = tokens_per_doc - n_function

    def profiled_doc(pool, author, index):
        return Document(
            id=f"{author}_{index:02d}",
            author=author,
            title=f"{index:02d}",
            text=_compose(
                rng,
                [
                    (function_pool, f_weights, n_function),
                    (pool, c_weights, n_content),
                ],
            ),
        )

    candidates = tuple(profiled_doc(pool_vela, "vela", i) for i in range(1, 6))
    imposters = [profiled_doc(pool_quill, "quill", i) for i in range(1, 5)]
    imposters += [profiled_doc(pool_sable, "sable", i) for i in range(1, 5)]

    n_laconic_function = round(laconic_function_share * tokens_per_doc)
    filler_cursor = 0
    for i in range(1, 4):
        n_filler = tokens_per_doc - n_laconic_function
        fillers = _filler_words(filler_cursor, n_filler)
        filler_cursor += n_filler
        imposters.append(
            Document(
                id=f"fleet_{i:02d}",
                author="fleet",
                title=f"{i:02d}",
                text=_compose(
                    rng,
                    [(function_pool, f_weights, n_laconic_function)],
                    extra_words=fillers,
                    jitter=1,
                ),
            )
        )

    n_sample_function = round(function_share * sample_tokens)
    sample = Document(
        id="vela_sample",
        author="vela",
        title="sample",
        text=_compose(
            rng,
            [
                (function_pool, f_weights, n_sample_function),
                (pool_vela, c_weights, sample_tokens - n_sample_function),
            ],
            min_one=False,
            jitter=0,
        ),
    )
    n_core = len(function_pool) + len(pool_vela) + len(pool_quill) + len(pool_sable)
    return ReplicationCorpus(
        candidates=candidates,
        imposters=tuple(imposters),
        sample=sample,
        n_mfw=n_core,
    )


def write_corpus(documents, directory) -> None:
    """Write documents as UTF-8 `<author>_<title>.txt` files for the CLI."""
    from pathlib import Path

    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    for doc in documents:
        (root / f"{doc.author}_{doc.title}.txt").write_text(doc.text, encoding="utf-8")


def as_corpus(documents) -> Corpus:
    """Bundle documents into an (unpartitioned) Corpus."""
    return Corpus(documents=tuple(documents))
