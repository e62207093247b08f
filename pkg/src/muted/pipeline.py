"""Shared analysis flow: extraction, role fallback, rendering, timings.

The CLI, the HTTP service, and the benchmark all run the exact same code
paths from here, so their outputs agree for identical inputs.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass

from .attention_core import (
    AttentionRecord,
    ExtractionConfig,
    SpanPrediction,
    extract_spans,
    normalize_scores,
)
from .interchange import SCHEMA_VERSION, record_to_obj
from .target_argument import (
    MissingParseError,
    TargetArgumentPair,
    argument_only_pair,
    assign_roles,
)
from .visualization import render_heatmap_html, render_roles_html


def record_id(record: AttentionRecord) -> str:
    """Deterministic short id: hash of the canonical record JSON."""
    canonical = json.dumps(record_to_obj(record), sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def run_extraction(
    record: AttentionRecord, cfg: ExtractionConfig, expand_modifiers: bool = True
) -> tuple[SpanPrediction, TargetArgumentPair | None]:
    """Extract spans and, when a parse is present, assign roles."""
    pred = extract_spans(record, cfg)
    try:
        pair = assign_roles(pred, record.parse, record.tokens, record.text, expand_modifiers)
    except MissingParseError:
        pair = None
    return pred, pair


@dataclass(frozen=True, slots=True)
class Analysis:
    """One full analysis with rendered fragments and per-phase seconds."""

    record: AttentionRecord
    pred: SpanPrediction
    pair: TargetArgumentPair | None
    render_pair: TargetArgumentPair
    heatmap_html: str
    roles_html: str
    span_prediction_s: float
    attention_map_s: float
    role_visuals_s: float
    total_s: float


def analyze(
    record: AttentionRecord,
    cfg: ExtractionConfig,
    expand_modifiers: bool = True,
    palette: str = "red",
) -> Analysis:
    """Run the three phases with a monotonic clock around each.

    Phase split: span prediction covers attention math and selection,
    attention map covers heatmap HTML, role visuals covers role
    assignment (or the argument-only fallback) plus role markup.
    """
    t0 = time.perf_counter()

    t_a = time.perf_counter()
    pred = extract_spans(record, cfg)
    t_b = time.perf_counter()

    heatmap = render_heatmap_html(record, normalize_scores(pred.word_scores), palette)
    t_c = time.perf_counter()

    pair: TargetArgumentPair | None
    try:
        pair = assign_roles(pred, record.parse, record.tokens, record.text, expand_modifiers)
        render_pair = pair
    except MissingParseError:
        pair = None
        render_pair = argument_only_pair(pred)
    roles = render_roles_html(record.text, render_pair)
    t_d = time.perf_counter()

    return Analysis(
        record=record,
        pred=pred,
        pair=pair,
        render_pair=render_pair,
        heatmap_html=heatmap,
        roles_html=roles,
        span_prediction_s=t_b - t_a,
        attention_map_s=t_c - t_b,
        role_visuals_s=t_d - t_c,
        total_s=t_d - t0,
    )


def prediction_document(
    record: AttentionRecord,
    pred: SpanPrediction,
    pair: TargetArgumentPair | None,
    cfg: ExtractionConfig,
) -> dict:
    """Canonical JSON document for one span prediction (CLI output)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "language": record.language,
        "classifier": {
            "label": record.classifier_label,
            "score": record.classifier_score,
        },
        "threshold": cfg.threshold,
        "mode": cfg.mode,
        "word_scores": [[w, s] for w, s in pred.word_scores],
        "selected_tokens": sorted(pred.selected_tokens),
        "selected_words": sorted(pred.selected_words),
        "char_spans": [[s, e] for s, e in pred.char_spans],
        "roles": None
        if pair is None
        else {
            "target": [[s, e] for s, e in pair.target_char_spans],
            "argument": [[s, e] for s, e in pair.argument_char_spans],
        },
    }
