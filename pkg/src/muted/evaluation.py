"""Character-level F1 scoring, evaluation settings, baseline, and tuning.

F1 is computed per example over sets of character offsets and averaged
across examples (macro average).  Four settings are supported:

* ``target_and_arg``: predicted span set vs. union of gold target and
  argument characters.
* ``arg_only``: predicted argument characters vs. gold argument characters.
* ``target_only``: predicted target characters vs. gold target characters;
  examples whose every pair has a null target are excluded and counted.
* ``tsd``: predicted span set vs. gold character offsets.

The random baseline marks each whitespace word independently with a fixed
probability under a seeded Mersenne Twister, so runs are bit-reproducible
across platforms.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .attention_core import (
    AttentionRecord,
    ExtractionConfig,
    SpanPrediction,
    extract_spans,
    merge_ranges,
)
from .interchange import GoldExample
from .target_argument import MissingParseError, TargetArgumentPair, assign_roles

SETTINGS = ("target_and_arg", "arg_only", "target_only", "tsd")

DEFAULT_GRID = tuple(round(0.05 * i, 2) for i in range(1, 21))

_WORD_RE = re.compile(r"\S+")


@dataclass(frozen=True, slots=True)
class EvalResult:
    """Per-example and mean character-level F1 for one setting."""

    setting: str
    per_example_f1: tuple[tuple[str, float], ...]
    mean_f1: float
    n_evaluated: int
    n_excluded: int
    threshold_used: float
    mode_used: str


def char_f1(pred_chars, gold_chars) -> float:
    """F1 over two sets of character offsets.

    Both empty scores 1.0, exactly one empty scores 0.0, otherwise
    2PR/(P+R) with P = |intersection|/|pred| and R = |intersection|/|gold|.
    """
    pred = set(pred_chars)
    gold = set(gold_chars)
    if not pred and not gold:
        return 1.0
    if not pred or not gold:
        return 0.0
    overlap = len(pred & gold)
    if overlap == 0:
        return 0.0
    precision = overlap / len(pred)
    recall = overlap / len(gold)
    return 2 * precision * recall / (precision + recall)


def _chars(ranges) -> frozenset[int]:
    return frozenset(c for s, e in ranges for c in range(s, e))


def gold_target_chars(example: GoldExample) -> frozenset[int]:
    """Union of target characters over all pairs (null targets contribute
    nothing)."""
    if example.pairs is None:
        raise ValueError(f"example {example.id!r} has no span pairs")
    out: set[int] = set()
    for pair in example.pairs:
        if pair.target is not None:
            out |= _chars(pair.target)
    return frozenset(out)


def gold_argument_chars(example: GoldExample) -> frozenset[int]:
    """Union of argument characters over all pairs."""
    if example.pairs is None:
        raise ValueError(f"example {example.id!r} has no span pairs")
    out: set[int] = set()
    for pair in example.pairs:
        out |= _chars(pair.argument)
    return frozenset(out)


def _all_targets_null(example: GoldExample) -> bool:
    return example.pairs is not None and all(p.target is None for p in example.pairs)


def evaluate_dataset(
    preds: dict[str, tuple[SpanPrediction, TargetArgumentPair | None]],
    golds: list[GoldExample],
    setting: str,
    threshold_used: float = 0.0,
    mode_used: str = "relative",
    raw_span_as_target: bool = False,
) -> EvalResult:
    """Score predictions against gold examples under one setting.

    Predictions without a role pair degrade to argument-only: the whole
    span set counts as argument and the predicted target is empty (unless
    ``raw_span_as_target`` makes the raw span set stand in for the target).
    Examples whose every pair has a null target are skipped in
    ``target_only`` and counted in ``n_excluded``.
    """
    if setting not in SETTINGS:
        raise ValueError(f"unknown setting {setting!r} (one of {SETTINGS})")
    if not golds:
        raise ValueError("no gold examples to evaluate")
    missing = [g.id for g in golds if g.id not in preds]
    if missing:
        raise KeyError(f"missing predictions for ids: {missing}")

    per_example: list[tuple[str, float]] = []
    n_excluded = 0
    for gold in golds:
        pred, pair = preds[gold.id]
        if setting == "tsd":
            if gold.gold_char_set is None:
                raise ValueError(f"example {gold.id!r} has no gold character set")
            gold_chars: frozenset[int] = gold.gold_char_set
            pred_chars: frozenset[int] = pred.char_set
        elif setting == "target_and_arg":
            gold_chars = gold_target_chars(gold) | gold_argument_chars(gold)
            pred_chars = pred.char_set
        elif setting == "arg_only":
            gold_chars = gold_argument_chars(gold)
            pred_chars = pair.argument_char_set if pair is not None else pred.char_set
        else:  # target_only
            if _all_targets_null(gold):
                n_excluded += 1
                continue
            gold_chars = gold_target_chars(gold)
            if raw_span_as_target:
                pred_chars = pred.char_set
            else:
                pred_chars = pair.target_char_set if pair is not None else frozenset()
        per_example.append((gold.id, char_f1(pred_chars, gold_chars)))

    mean = sum(f for _, f in per_example) / len(per_example) if per_example else 0.0
    return EvalResult(
        setting=setting,
        per_example_f1=tuple(per_example),
        mean_f1=mean,
        n_evaluated=len(per_example),
        n_excluded=n_excluded,
        threshold_used=threshold_used,
        mode_used=mode_used,
    )


def whitespace_words(text: str) -> list[tuple[int, int]]:
    """[start, end) of every whitespace-delimited word."""
    return [(m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def random_baseline(
    gold: GoldExample,
    p: float = 0.5,
    seed: int | None = None,
    rng: random.Random | None = None,
) -> SpanPrediction:
    """Mark each whitespace word of the text with probability ``p``.

    A fresh ``random.Random(seed)`` drives the draws unless an existing
    generator is passed; either way the output is deterministic for a
    fixed seed/stream.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if rng is None:
        rng = random.Random(seed)
    words = whitespace_words(gold.text)
    selected = {i for i in range(len(words)) if rng.random() < p}
    spans = merge_ranges([words[i] for i in sorted(selected)])
    chars = frozenset(c for s, e in spans for c in range(s, e))
    return SpanPrediction(
        selected_tokens=frozenset(selected),
        word_scores=tuple(
            (i, 1.0 if i in selected else 0.0) for i in range(len(words))
        ),
        selected_words=frozenset(selected),
        char_spans=tuple(spans),
        char_set=chars,
    )


def predictions_for_config(
    records: dict[str, AttentionRecord],
    cfg: ExtractionConfig,
    expand_modifiers: bool = True,
) -> dict[str, tuple[SpanPrediction, TargetArgumentPair | None]]:
    """Run the extraction pipeline over a keyed record set; role pairs are
    attached where a parse exists and set to None otherwise."""
    out: dict[str, tuple[SpanPrediction, TargetArgumentPair | None]] = {}
    for rec_id, record in records.items():
        pred = extract_spans(record, cfg)
        pair: TargetArgumentPair | None
        try:
            pair = assign_roles(
                pred, record.parse, record.tokens, record.text, expand_modifiers
            )
        except MissingParseError:
            pair = None
        out[rec_id] = (pred, pair)
    return out


def tune_threshold(
    records: dict[str, AttentionRecord],
    golds: list[GoldExample],
    setting: str,
    grid=None,
    mode: str = "relative",
    expand_modifiers: bool = True,
    raw_span_as_target: bool = False,
) -> tuple[float, dict[float, EvalResult]]:
    """Grid-search the threshold that maximizes mean F1.

    Every grid value is evaluated; ties break toward the larger threshold.
    Default grid is 0.05 to 1.00 in steps of 0.05, relative mode.
    """
    grid = list(DEFAULT_GRID if grid is None else grid)
    if not grid:
        raise ValueError("threshold grid is empty")
    if not records or not golds:
        raise ValueError("records and golds must be non-empty")

    results: dict[float, EvalResult] = {}
    best_tau = grid[0]
    best_mean = -1.0
    for tau in sorted(grid):
        cfg = ExtractionConfig(threshold=tau, mode=mode)
        preds = predictions_for_config(records, cfg, expand_modifiers)
        result = evaluate_dataset(
            preds,
            golds,
            setting,
            threshold_used=tau,
            mode_used=mode,
            raw_span_as_target=raw_span_as_target,
        )
        results[tau] = result
        if result.mean_f1 >= best_mean:
            best_mean = result.mean_f1
            best_tau = tau
    return best_tau, results


def result_to_obj(result: EvalResult) -> dict:
    """JSON-ready object for one evaluation result."""
    return {
        "setting": result.setting,
        "mean_f1": result.mean_f1,
        "n_evaluated": result.n_evaluated,
        "n_excluded": result.n_excluded,
        "threshold": result.threshold_used,
        "mode": result.mode_used,
        "per_example": [{"id": i, "f1": f} for i, f in result.per_example_f1],
    }


def result_table(result: EvalResult, max_rows: int | None = None) -> str:
    """Aligned plain-text table for one evaluation result."""
    rows = list(result.per_example_f1)
    shown = rows if max_rows is None else rows[:max_rows]
    id_width = max([len("id")] + [len(i) for i, _ in shown])
    lines = [
        f"setting: {result.setting}   threshold: {result.threshold_used:g} ({result.mode_used})",
        f"evaluated: {result.n_evaluated}   excluded: {result.n_excluded}   mean F1: {result.mean_f1:.4f}",
        f"{'id':<{id_width}}  {'F1':>8}",
    ]
    for ex_id, f1 in shown:
        lines.append(f"{ex_id:<{id_width}}  {f1:>8.4f}")
    if max_rows is not None and len(rows) > max_rows:
        lines.append(f"... ({len(rows) - max_rows} more rows)")
    return "\n".join(lines)
