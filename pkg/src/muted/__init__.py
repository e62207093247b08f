"""Model-agnostic offensive-span extraction from classifier attention.

Feed any sentence-level hate/abuse/profanity classifier's first-token
attention rows in as schema-v1 records; get thresholded character spans,
<target, argument> role splits, character-level F1 evaluation, and
heatmap/role HTML out.
"""

from .attention_core import (
    AttentionRecord,
    CoreValidationError,
    ExtractionConfig,
    ParseArc,
    SpanPrediction,
    TokenInfo,
    aggregate_to_words,
    average_heads,
    extract_spans,
    normalize_scores,
    select_tokens,
    words_to_char_spans,
)
from .evaluation import (
    EvalResult,
    char_f1,
    evaluate_dataset,
    random_baseline,
    tune_threshold,
)
from .interchange import (
    SCHEMA_VERSION,
    GoldExample,
    GoldPair,
    RecordValidationError,
    load_gold_dataset,
    parse_attention_record,
    serialize_attention_record,
)
from .target_argument import MissingParseError, TargetArgumentPair, assign_roles
from .visualization import render_heatmap_html, render_roles_html

__version__ = "0.1.0"

__all__ = [
    "AttentionRecord",
    "CoreValidationError",
    "EvalResult",
    "ExtractionConfig",
    "GoldExample",
    "GoldPair",
    "MissingParseError",
    "ParseArc",
    "RecordValidationError",
    "SCHEMA_VERSION",
    "SpanPrediction",
    "TargetArgumentPair",
    "TokenInfo",
    "aggregate_to_words",
    "assign_roles",
    "average_heads",
    "char_f1",
    "evaluate_dataset",
    "extract_spans",
    "load_gold_dataset",
    "normalize_scores",
    "parse_attention_record",
    "random_baseline",
    "render_heatmap_html",
    "render_roles_html",
    "select_tokens",
    "serialize_attention_record",
    "tune_threshold",
    "words_to_char_spans",
]
