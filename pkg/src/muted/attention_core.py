"""Pure attention-to-span pipeline.

Everything here is a pure function over immutable values: per-head
first-token attention rows go in, character spans come out.  No I/O, no
hidden state, safe for unrestricted concurrent use.

Character offsets throughout are Unicode scalar indices (Python ``str``
positions), never bytes or UTF-16 units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class CoreValidationError(ValueError):
    """Raised when an operation's input breaks its stated preconditions."""


@dataclass(frozen=True, slots=True)
class TokenInfo:
    """One model token with its character alignment.

    Special tokens (sequence markers) carry ``start == end == 0`` and
    ``word_index == -1``; every other token maps to exactly one word.
    """

    text: str
    start: int
    end: int
    word_index: int
    special: bool = False


@dataclass(frozen=True, slots=True)
class ParseArc:
    """One dependency arc at word granularity (parser-agnostic transport)."""

    word_index: int
    head: int
    label: str
    pos: str = ""


@dataclass(frozen=True, slots=True)
class AttentionRecord:
    """One analyzed text: tokens, per-head first-token attention rows, verdict.

    ``head_cls_rows`` is an H x n matrix: row i holds head i's last-layer
    attention from the first (pooled) token to every token of the sequence.
    Full n x n maps are deliberately not carried; the pipeline only reads
    the first-token row.
    """

    text: str
    language: str
    tokens: tuple[TokenInfo, ...]
    head_cls_rows: tuple[tuple[float, ...], ...]
    layer_index: int
    classifier_label: str
    classifier_score: float
    parse: tuple[ParseArc, ...] | None = None

    @property
    def word_count(self) -> int:
        indices = {t.word_index for t in self.tokens if not t.special}
        return len(indices)


@dataclass(frozen=True, slots=True)
class ExtractionConfig:
    """Threshold settings for span selection.

    ``relative`` mode cuts at ``threshold * max(candidate score)``, which is
    robust to attention mass shrinking with sequence length; ``absolute``
    mode cuts at the raw value.  Special tokens are excluded from both the
    maximum and the selection unless ``include_special`` is set.
    """

    threshold: float = 0.6
    mode: str = "relative"
    include_special: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise CoreValidationError(
                f"threshold must be in [0, 1], got {self.threshold}"
            )
        if self.mode not in ("relative", "absolute"):
            raise CoreValidationError(
                f"mode must be 'relative' or 'absolute', got {self.mode!r}"
            )


@dataclass(frozen=True, slots=True)
class SpanPrediction:
    """Selected tokens/words and the resulting character spans.

    ``char_spans`` are sorted, non-overlapping ``[start, end)`` ranges;
    ``char_set`` is their union as individual offsets.
    """

    selected_tokens: frozenset[int]
    word_scores: tuple[tuple[int, float], ...]
    selected_words: frozenset[int]
    char_spans: tuple[tuple[int, int], ...]
    char_set: frozenset[int] = field(repr=False)


def average_heads(head_cls_rows) -> list[float]:
    """Arithmetic mean over heads, column by column.

    Accepts any H x n sequence of sequences with H >= 1; rejects empty or
    ragged input, naming the offending row.
    """
    rows = [list(r) for r in head_cls_rows]
    if not rows:
        raise CoreValidationError("head_cls_rows must have at least one row")
    n = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != n:
            raise CoreValidationError(
                f"head_cls_rows[{i}] has {len(row)} entries, expected {n}"
            )
        for j, v in enumerate(row):
            if not _finite(v) or v < 0:
                raise CoreValidationError(
                    f"head_cls_rows[{i}][{j}] is not a finite non-negative number"
                )
    h = len(rows)
    return [sum(row[j] for row in rows) / h for j in range(n)]


def _finite(v) -> bool:
    return isinstance(v, (int, float)) and math.isfinite(v)


def _passes(score: float, cutoff: float) -> bool:
    return score >= cutoff


def _cutoff(scores: list[float], cfg: ExtractionConfig) -> float:
    if cfg.mode == "absolute":
        return cfg.threshold
    return cfg.threshold * max(scores) if scores else 0.0


def select_tokens(
    scores, tokens: tuple[TokenInfo, ...] | list[TokenInfo], cfg: ExtractionConfig
) -> set[int]:
    """Token indices whose score passes the configured cutoff.

    Relative mode: selected iff ``score >= threshold * max`` where the max
    ranges over candidate tokens; absolute mode compares against the raw
    threshold.  Special tokens are never candidates unless
    ``cfg.include_special``; an all-special sequence selects nothing.
    """
    scores = list(scores)
    if len(scores) != len(tokens):
        raise CoreValidationError(
            f"scores length {len(scores)} != token count {len(tokens)}"
        )
    candidates = [
        i for i, t in enumerate(tokens) if cfg.include_special or not t.special
    ]
    if not candidates:
        return set()
    cutoff = _cutoff([scores[i] for i in candidates], cfg)
    return {i for i in candidates if _passes(scores[i], cutoff)}


def aggregate_to_words(
    scores, tokens: tuple[TokenInfo, ...] | list[TokenInfo]
) -> list[tuple[int, float]]:
    """Word-level scores: each word takes the maximum over its tokens.

    Special tokens contribute to no word.  Output is ordered by word index.
    """
    scores = list(scores)
    if len(scores) != len(tokens):
        raise CoreValidationError(
            f"scores length {len(scores)} != token count {len(tokens)}"
        )
    best: dict[int, float] = {}
    for i, tok in enumerate(tokens):
        if tok.special:
            continue
        w = tok.word_index
        if w in best:
            best[w] = max(best[w], scores[i])
        else:
            best[w] = scores[i]
    return sorted(best.items())


def word_char_hulls(
    tokens: tuple[TokenInfo, ...] | list[TokenInfo],
) -> dict[int, tuple[int, int]]:
    """Per-word character hull: [min start, max end) over constituent tokens."""
    hulls: dict[int, tuple[int, int]] = {}
    for tok in tokens:
        if tok.special:
            continue
        w = tok.word_index
        if w in hulls:
            s, e = hulls[w]
            hulls[w] = (min(s, tok.start), max(e, tok.end))
        else:
            hulls[w] = (tok.start, tok.end)
    return hulls


def merge_ranges(ranges) -> list[tuple[int, int]]:
    """Sort [start, end) ranges and merge the overlapping or touching ones."""
    out: list[tuple[int, int]] = []
    for s, e in sorted(ranges):
        if out and s <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], e))
        else:
            out.append((s, e))
    return out


def words_to_char_spans(
    selected_words,
    tokens: tuple[TokenInfo, ...] | list[TokenInfo],
    text: str,
) -> tuple[list[tuple[int, int]], set[int]]:
    """Character spans covered by the selected words.

    Each word contributes its token hull; separators between words are not
    included, so gold annotations are never penalized for whitespace.
    Touching or overlapping hulls merge into one span.
    """
    hulls = word_char_hulls(tokens)
    picked = []
    for w in selected_words:
        if w not in hulls:
            raise CoreValidationError(f"selected word {w} has no tokens")
        picked.append(hulls[w])
    spans = merge_ranges(picked)
    chars = {c for s, e in spans for c in range(s, e)}
    return spans, chars


def extract_spans(record: AttentionRecord, cfg: ExtractionConfig) -> SpanPrediction:
    """Full pipeline: head average -> word max -> threshold -> char spans.

    Thresholding runs at word level so multi-token words are kept or
    dropped atomically; the reported token set contains every token of a
    selected word.  Deterministic: identical input yields identical output.
    """
    token_scores = average_heads(record.head_cls_rows)
    if len(token_scores) != len(record.tokens):
        raise CoreValidationError(
            f"attention row length {len(token_scores)} != token count {len(record.tokens)}"
        )
    word_scores = aggregate_to_words(token_scores, record.tokens)
    cutoff = _cutoff([s for _, s in word_scores], cfg)
    selected_words = (
        {w for w, s in word_scores if _passes(s, cutoff)} if word_scores else set()
    )
    selected_tokens = {
        i
        for i, t in enumerate(record.tokens)
        if not t.special and t.word_index in selected_words
    }
    spans, chars = words_to_char_spans(selected_words, record.tokens, record.text)
    return SpanPrediction(
        selected_tokens=frozenset(selected_tokens),
        word_scores=tuple(word_scores),
        selected_words=frozenset(selected_words),
        char_spans=tuple(spans),
        char_set=frozenset(chars),
    )


def normalize_scores(
    word_scores: list[tuple[int, float]] | tuple[tuple[int, float], ...],
) -> list[tuple[int, float]]:
    """Scale word scores into [0, 1] by dividing by the maximum.

    An all-zero input stays all-zero; an empty input stays empty.
    """
    scores = list(word_scores)
    if not scores:
        return []
    peak = max(s for _, s in scores)
    if peak == 0:
        return [(w, 0.0) for w, _ in scores]
    return [(w, s / peak) for w, s in scores]
