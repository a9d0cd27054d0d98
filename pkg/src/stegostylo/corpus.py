"""Author-labeled text collections and the canonical word tokenizer.

Every downstream stage (feature extraction, verification, injection,
sweeps) segments text with the same rule: a word is a maximal run of
Unicode letter-category scalars, case-folded to lowercase. Everything
else -- digits, punctuation, whitespace, and crucially zero-width format
characters -- is a separator. Zero-width scalars are deliberately NOT
stripped before tokenization: a verifier that sanitized its input would
be blind to the very fragmentation this toolkit studies.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path

from .errors import CorpusError, CorpusWarning

FILENAME_PATTERN = "<author>_<title>.txt"


def letter_runs(text: str) -> list[tuple[int, int]]:
    """Return (start, end) scalar offsets of every maximal letter run in text."""
    runs = []
    start = None
    for i, ch in enumerate(text):
        if ch.isalpha():
            if start is None:
                start = i
        elif start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(text)))
    return runs


def tokenize(text: str) -> list[str]:
    """Split text into lowercase word tokens.

    Tokens are maximal runs of Unicode letter-category scalars; every
    non-letter scalar is a separator. A zero-width scalar inside a word
    therefore splits it into two fragment tokens.
    """
    return [text[s:e].lower() for s, e in letter_runs(text)]


class Role(Enum):
    CANDIDATE = "candidate"
    IMPOSTER = "imposter"
    TEST = "test"


@dataclass(frozen=True)
class Document:
    """One author-labeled Unicode text."""

    id: str
    author: str
    text: str
    title: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("document id must be nonempty")
        if not self.author:
            raise CorpusError(f"document {self.id!r}: author must be nonempty")

    @cached_property
    def tokens(self) -> tuple[str, ...]:
        """Lowercase word tokens, derived once from text."""
        return tuple(tokenize(self.text))


@dataclass(frozen=True)
class Corpus:
    """An immutable document collection, optionally partitioned into roles."""

    documents: tuple[Document, ...]
    roles: dict[str, Role] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise CorpusError(f"duplicate document ids: {', '.join(dupes)}")
        unknown = set(self.roles) - set(ids)
        if unknown:
            raise CorpusError(f"roles assigned to unknown ids: {sorted(unknown)}")
        tests = [i for i, r in self.roles.items() if r is Role.TEST]
        if len(tests) > 1:
            raise CorpusError(f"more than one test document: {sorted(tests)}")

    def document(self, doc_id: str) -> Document:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        raise CorpusError(f"unknown document id {doc_id!r}")

    @property
    def authors(self) -> tuple[str, ...]:
        return tuple(sorted({d.author for d in self.documents}))

    def with_role(self, role: Role) -> tuple[Document, ...]:
        return tuple(d for d in self.documents if self.roles.get(d.id) is role)

    @property
    def candidate_documents(self) -> tuple[Document, ...]:
        return self.with_role(Role.CANDIDATE)

    @property
    def imposter_documents(self) -> tuple[Document, ...]:
        return self.with_role(Role.IMPOSTER)

    @property
    def test_document(self) -> Document | None:
        docs = self.with_role(Role.TEST)
        return docs[0] if docs else None


def load_corpus(directory: str | Path) -> Corpus:
    """Load every ``*.txt`` file in directory as one document.

    Files must be UTF-8 and named ``<author>_<title>.txt``; the first
    underscore splits author from title. Decoding errors are rejected,
    never patched.
    """
    root = Path(directory)
    if not root.is_dir():
        raise CorpusError(f"corpus directory does not exist: {root}")
    paths = sorted(root.glob("*.txt"))
    if not paths:
        raise CorpusError(f"empty corpus: no .txt files in {root}")
    documents = []
    for path in paths:
        stem = path.stem
        author, _, title = stem.partition("_")
        if not author or not title:
            raise CorpusError(
                f"{path.name}: filename does not match {FILENAME_PATTERN}"
            )
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path.name}: not valid UTF-8 ({exc})") from exc
        documents.append(Document(id=stem, author=author, text=text, title=title))
    return Corpus(documents=tuple(documents))


def partition(corpus: Corpus, candidate_author: str, test_id: str) -> Corpus:
    """Assign every document a role for one verification run.

    The test document gets role Test; the candidate author's remaining
    documents form the candidate set; every other document becomes an
    imposter. The imposter pool should span at least two authors for the
    comparison to mean much; a thinner pool only warns.
    """
    test = corpus.document(test_id)
    roles: dict[str, Role] = {test_id: Role.TEST}
    for doc in corpus.documents:
        if doc.id == test_id:
            continue
        roles[doc.id] = (
            Role.CANDIDATE if doc.author == candidate_author else Role.IMPOSTER
        )
    if not any(r is Role.CANDIDATE for r in roles.values()):
        raise CorpusError(
            f"candidate set empty: {candidate_author!r} has no documents "
            f"besides the test text"
        )
    imposter_authors = {
        corpus.document(i).author for i, r in roles.items() if r is Role.IMPOSTER
    }
    if len(imposter_authors) < 2:
        warnings.warn(
            f"imposter pool has {len(imposter_authors)} author(s); "
            f"verification is more meaningful with at least 2",
            CorpusWarning,
            stacklevel=2,
        )
    return Corpus(documents=corpus.documents, roles=roles)
