"""Zero-width Unicode steganography: inject, detect, strip, encode, decode.

Injection places a single invisible format scalar strictly inside a word
(an infix), which leaves the rendered text unchanged while breaking both
plain substring search and letter-run tokenization: the word splits into
two fragment tokens that match nothing in a word-frequency vocabulary.

Detection deliberately scans the full five-scalar zero-width family, not
just the charset an injector was configured with; a forensic tool must
not be blinded by its own settings.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import letter_runs
from .errors import InjectionError, PayloadError

ZWSP = "​"  # ZERO WIDTH SPACE
ZWNJ = "‌"  # ZERO WIDTH NON-JOINER
ZWJ = "‍"  # ZERO WIDTH JOINER
WORD_JOINER = "⁠"
ZWNBSP = "﻿"  # ZERO WIDTH NO-BREAK SPACE / BOM

ZERO_WIDTH_FAMILY = (ZWSP, ZWNJ, ZWJ, WORD_JOINER, ZWNBSP)
_FAMILY_SET = frozenset(ZERO_WIDTH_FAMILY)
DEFAULT_CHARSET = (ZWSP,)

PLACEHOLDERS = {
    ZWSP: "<ZWSP>",
    ZWNJ: "<ZWNJ>",
    ZWJ: "<ZWJ>",
    WORD_JOINER: "<WJ>",
    ZWNBSP: "<ZWNBSP>",
}

# payload codec
BIT0 = ZWSP
BIT1 = ZWNJ
END_MARKER = ZWJ
MAX_BITS_PER_WORD = 8

_CONTEXT_RADIUS = 8


class InjectionMode(Enum):
    PREFIX = "prefix"  # first k eligible words, scalar at the letter-run midpoint
    RANDOM = "random"  # k uniform eligible words, uniform interior position


def zero_width_charset(scalars) -> tuple[str, ...]:
    """Validate an injection charset: nonempty, no duplicates, family members only."""
    charset = tuple(scalars)
    if not charset:
        raise InjectionError("charset must be nonempty")
    if len(set(charset)) != len(charset):
        raise InjectionError("charset contains duplicates")
    bad = [c for c in charset if c not in _FAMILY_SET]
    if bad:
        names = ", ".join(f"U+{ord(c):04X}" for c in bad)
        raise InjectionError(f"not zero-width family scalars: {names}")
    return charset


@dataclass(frozen=True)
class Insertion:
    offset: int  # scalar offset in the stego text
    codepoint: str


@dataclass(frozen=True)
class InjectionPlan:
    """Exactly which words received which scalars, and where."""

    word_indices: tuple[int, ...]  # token positions over the original text
    insertions: tuple[Insertion, ...]
    k: int
    coverage: float  # k / eligible word count
    total_words: int
    eligible_words: int
    mode: InjectionMode
    seed: int | None
    charset: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "word_indices": list(self.word_indices),
            "insertions": [
                {"offset": ins.offset, "codepoint": f"U+{ord(ins.codepoint):04X}"}
                for ins in self.insertions
            ],
            "k": self.k,
            "coverage": self.coverage,
            "total_words": self.total_words,
            "eligible_words": self.eligible_words,
            "mode": self.mode.value,
            "seed": self.seed,
            "charset": [f"U+{ord(c):04X}" for c in self.charset],
        }


def eligible_word_count(text: str) -> int:
    """Words long enough to take an infix (letter-run length >= 2)."""
    return sum(1 for s, e in letter_runs(text) if e - s >= 2)


def inject_k(
    text: str,
    k: int,
    mode: InjectionMode = InjectionMode.PREFIX,
    seed: int | None = None,
    charset=DEFAULT_CHARSET,
) -> tuple[str, InjectionPlan]:
    """Inject one zero-width scalar into each of k distinct eligible words.

    Prefix mode takes the first k eligible words in text order and splits
    each at its midpoint; Random mode draws k eligible words without
    replacement and a uniform interior position per word, both from the
    seeded stream. Every other scalar of the text is left untouched.
    """
    charset = zero_width_charset(charset)
    if k < 0:
        raise InjectionError(f"k must be non-negative, got {k}")
    runs = letter_runs(text)
    eligible = [i for i, (s, e) in enumerate(runs) if e - s >= 2]
    if k > len(eligible):
        raise InjectionError(
            f"cannot inject {k} words: only {len(eligible)} eligible "
            f"words (length >= 2) in text"
        )
    rng = np.random.default_rng(seed) if mode is InjectionMode.RANDOM else None
    if mode is InjectionMode.PREFIX:
        chosen = eligible[:k]
    else:
        picks = rng.choice(len(eligible), size=k, replace=False)
        chosen = sorted(eligible[int(i)] for i in picks)

    insertions = []
    out_parts = []
    cursor = 0
    for rank, word_idx in enumerate(chosen):
        start, end = runs[word_idx]
        length = end - start
        if mode is InjectionMode.PREFIX:
            rel = length // 2
            scalar = charset[rank % len(charset)]
        else:
            rel = int(rng.integers(1, length))
            scalar = charset[int(rng.integers(0, len(charset)))]
        orig_offset = start + rel
        out_parts.append(text[cursor:orig_offset])
        out_parts.append(scalar)
        cursor = orig_offset
        insertions.append(Insertion(offset=orig_offset + rank, codepoint=scalar))
    out_parts.append(text[cursor:])
    stego = "".join(out_parts)
    plan = InjectionPlan(
        word_indices=tuple(chosen),
        insertions=tuple(insertions),
        k=k,
        coverage=k / len(eligible) if eligible else 0.0,
        total_words=len(runs),
        eligible_words=len(eligible),
        mode=mode,
        seed=seed,
        charset=charset,
    )
    return stego, plan


def inject(
    text: str,
    coverage: float,
    mode: InjectionMode = InjectionMode.PREFIX,
    seed: int | None = None,
    charset=DEFAULT_CHARSET,
) -> tuple[str, InjectionPlan]:
    """Inject a fraction of the eligible words: k = round-half-up(coverage * W)."""
    if not 0.0 <= coverage <= 1.0:
        raise InjectionError(f"coverage must be in [0, 1], got {coverage}")
    w = eligible_word_count(text)
    k = int(np.floor(coverage * w + 0.5))
    return inject_k(text, k, mode=mode, seed=seed, charset=charset)


def apply_plan(text: str, plan: InjectionPlan) -> str:
    """Replay a plan's insertions against the original text."""
    out = text
    for ins in plan.insertions:  # offsets are ascending, in stego coordinates
        out = out[: ins.offset] + ins.codepoint + out[ins.offset :]
    return out


@dataclass(frozen=True)
class Finding:
    offset: int
    codepoint: str
    context: str  # +/- 8 scalars, zero-width scalars shown as placeholders


@dataclass(frozen=True)
class DetectionReport:
    """Forensic inventory of every zero-width scalar in a text."""

    findings: tuple[Finding, ...]
    counts: dict[str, int]  # keyed "U+XXXX"
    bom_suspect: bool  # leading U+FEFF, likely an encoding artifact

    @property
    def clean(self) -> bool:
        return not self.findings

    def to_dict(self) -> dict:
        return {
            "findings": [
                {
                    "offset": f.offset,
                    "codepoint": f"U+{ord(f.codepoint):04X}",
                    "name": unicodedata.name(f.codepoint),
                    "context": f.context,
                }
                for f in self.findings
            ],
            "counts": dict(sorted(self.counts.items())),
            "bom_suspect": self.bom_suspect,
            "total": len(self.findings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        """Human-readable table: offset, codepoint, name, visible context."""
        if not self.findings:
            return "no zero-width characters found\n"
        lines = [f"{'offset':>8}  {'codepoint':<9}  {'name':<28}  context"]
        for f in self.findings:
            lines.append(
                f"{f.offset:>8}  "
                f"{'U+%04X' % ord(f.codepoint):<9}  "
                f"{unicodedata.name(f.codepoint):<28}  "
                f"{f.context}"
            )
        total = ", ".join(f"{cp} x{n}" for cp, n in sorted(self.counts.items()))
        lines.append(f"{len(self.findings)} finding(s): {total}")
        if self.bom_suspect:
            lines.append("leading U+FEFF: possible byte-order mark")
        return "\n".join(lines) + "\n"


def _context(text: str, i: int) -> str:
    window = text[max(0, i - _CONTEXT_RADIUS) : i] + text[i + 1 : i + 1 + _CONTEXT_RADIUS]
    return "".join(PLACEHOLDERS.get(ch, ch) for ch in window)


def detect(text: str) -> DetectionReport:
    """Inventory every zero-width family scalar, whatever charset produced it."""
    findings = []
    counts: Counter[str] = Counter()
    for i, ch in enumerate(text):
        if ch in _FAMILY_SET:
            findings.append(Finding(offset=i, codepoint=ch, context=_context(text, i)))
            counts[f"U+{ord(ch):04X}"] += 1
    return DetectionReport(
        findings=tuple(findings),
        counts=dict(counts),
        bom_suspect=text.startswith(ZWNBSP),
    )


_STRIP_TABLE = {ord(c): None for c in ZERO_WIDTH_FAMILY}


def strip(text: str) -> str:
    """Remove every zero-width family scalar; all other scalars keep their order."""
    return text.translate(_STRIP_TABLE)


def _normalize_bits(bits) -> str:
    if isinstance(bits, str):
        seq = bits
    else:
        seq = "".join(str(int(b)) for b in bits)
    if any(ch not in "01" for ch in seq):
        raise PayloadError("payload must be a sequence of 0/1 bits")
    return seq


def payload_capacity(cover: str, max_bits_per_word: int = MAX_BITS_PER_WORD) -> int:
    """How many payload bits a cover text can carry."""
    return max_bits_per_word * eligible_word_count(cover)


def encode_payload(
    cover: str, bits, max_bits_per_word: int = MAX_BITS_PER_WORD
) -> str:
    """Hide a bit sequence in a cover text as zero-width infixes.

    Bits map 0 -> U+200B and 1 -> U+200C; a single U+200D terminates the
    payload. Scalars fill eligible words in text order, at most
    max_bits_per_word per word, each block inserted at the word's
    midpoint. The visible text is unchanged.
    """
    bit_str = _normalize_bits(bits)
    runs = [(s, e) for s, e in letter_runs(cover) if e - s >= 2]
    if not runs:
        raise PayloadError("cover text has no eligible words (length >= 2)")
    capacity = max_bits_per_word * len(runs)
    if len(bit_str) > capacity:
        raise PayloadError(
            f"payload of {len(bit_str)} bits exceeds capacity of "
            f"{capacity} bits ({len(runs)} eligible words x "
            f"{max_bits_per_word} bits)"
        )
    scalars = [BIT0 if b == "0" else BIT1 for b in bit_str]
    scalars.append(END_MARKER)
    blocks = [
        scalars[i : i + max_bits_per_word]
        for i in range(0, len(scalars), max_bits_per_word)
    ]
    if len(blocks) > len(runs):  # payload filled capacity; marker rides along
        blocks[-2].extend(blocks[-1])
        blocks.pop()
    out_parts = []
    cursor = 0
    for (start, end), block in zip(runs, blocks):
        mid = start + (end - start) // 2
        out_parts.append(cover[cursor:mid])
        out_parts.append("".join(block))
        cursor = mid
    out_parts.append(cover[cursor:])
    return "".join(out_parts)


def decode_payload(stego: str) -> str:
    """Recover the bit sequence hidden by encode_payload.

    Reads zero-width scalars in text order up to the U+200D end-marker;
    anything after the marker is ignored. A family scalar that is neither
    a bit nor the marker corrupts the payload.
    """
    bits = []
    for i, ch in enumerate(stego):
        if ch == BIT0:
            bits.append("0")
        elif ch == BIT1:
            bits.append("1")
        elif ch == END_MARKER:
            return "".join(bits)
        elif ch in _FAMILY_SET:
            raise PayloadError(
                f"corrupt payload: unexpected U+{ord(ch):04X} at offset {i}"
            )
    raise PayloadError("no payload: end marker not found")
