"""Attention-record JSON schema v1 and gold-dataset normalization.

The record format carries everything the pipeline needs: the original
text, tokens with character offsets, per-head first-token attention rows,
the classifier verdict, and an optional dependency parse.  All offsets are
Unicode scalar indices.

Gold datasets normalize to one shape: either a set of toxic character
offsets (span-annotated comments) or a list of <target, argument> span
pairs (targeted-offense tweets), where the target may be null.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from dataclasses import dataclass

from .attention_core import AttentionRecord, ParseArc, TokenInfo

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_RECORD_FIELDS = {
    "schema_version",
    "text",
    "language",
    "tokens",
    "head_cls_rows",
    "layer_index",
    "classifier_label",
    "classifier_score",
    "parse",
}
_TOKEN_FIELDS = {"text", "start", "end", "word_index", "special"}
_ARC_FIELDS = {"word_index", "head", "label", "pos"}
_LANGUAGE_RE = re.compile(r"^[a-z]{2}$")


class RecordValidationError(ValueError):
    """A record broke an invariant; ``path`` names the offending JSON node."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class GoldDatasetError(ValueError):
    """No usable rows could be loaded from a gold dataset file."""


@dataclass(frozen=True, slots=True)
class GoldPair:
    """One annotated <target, argument> pair; target is None when the
    offense's target is not mentioned in the text."""

    target: tuple[tuple[int, int], ...] | None
    argument: tuple[tuple[int, int], ...]


@dataclass(frozen=True, slots=True)
class GoldExample:
    """One gold-annotated text: either character offsets or span pairs."""

    id: str
    text: str
    language: str
    gold_char_set: frozenset[int] | None = None
    pairs: tuple[GoldPair, ...] | None = None

    def __post_init__(self) -> None:
        if (self.gold_char_set is None) == (self.pairs is None):
            raise ValueError(
                f"example {self.id!r}: exactly one of gold_char_set/pairs required"
            )


def _err(path: str, message: str) -> RecordValidationError:
    return RecordValidationError(path, message)


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise _err(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _check_number(v, path: str, lo: float | None = None, hi: float | None = None) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _err(path, "must be a number")
    if not math.isfinite(v):
        raise _err(path, "must be finite")
    if lo is not None and v < lo:
        raise _err(path, f"must be >= {lo}")
    if hi is not None and v > hi:
        raise _err(path, f"must be <= {hi}")
    return float(v)


def _check_int(v, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise _err(path, "must be an integer")
    return v


def _check_str(v, path: str) -> str:
    if not isinstance(v, str):
        raise _err(path, "must be a string")
    return v


def _parse_token(obj, i: int, strict: bool) -> TokenInfo:
    path = f"tokens[{i}]"
    if not isinstance(obj, dict):
        raise _err(path, "must be an object")
    if strict:
        unknown = set(obj) - _TOKEN_FIELDS
        if unknown:
            raise _err(path, f"unknown fields: {sorted(unknown)}")
    return TokenInfo(
        text=_check_str(_require(obj, "text", path), f"{path}.text"),
        start=_check_int(_require(obj, "start", path), f"{path}.start"),
        end=_check_int(_require(obj, "end", path), f"{path}.end"),
        word_index=_check_int(_require(obj, "word_index", path), f"{path}.word_index"),
        special=bool(obj.get("special", False)),
    )


def _parse_arc(obj, i: int, strict: bool) -> ParseArc:
    path = f"parse[{i}]"
    if not isinstance(obj, dict):
        raise _err(path, "must be an object")
    if strict:
        unknown = set(obj) - _ARC_FIELDS
        if unknown:
            raise _err(path, f"unknown fields: {sorted(unknown)}")
    label = _check_str(_require(obj, "label", path), f"{path}.label")
    if not label:
        raise _err(f"{path}.label", "must be non-empty")
    return ParseArc(
        word_index=_check_int(_require(obj, "word_index", path), f"{path}.word_index"),
        head=_check_int(_require(obj, "head", path), f"{path}.head"),
        label=label.lower(),
        pos=_check_str(obj.get("pos", ""), f"{path}.pos"),
    )


def validate_record(record: AttentionRecord) -> None:
    """Check every record invariant; raises RecordValidationError on the
    first violation, naming the offending node."""
    n = len(record.tokens)
    text_len = len(record.text)

    if not _LANGUAGE_RE.match(record.language):
        raise _err("language", f"must be a two-letter lowercase code, got {record.language!r}")
    if record.classifier_label not in ("hap", "clean"):
        raise _err("classifier_label", f"must be 'hap' or 'clean', got {record.classifier_label!r}")
    _check_number(record.classifier_score, "classifier_score", lo=0.0, hi=1.0)

    if len(record.head_cls_rows) == 0:
        raise _err("head_cls_rows", "must have at least one row")
    for i, row in enumerate(record.head_cls_rows):
        if len(row) != n:
            raise _err(f"head_cls_rows[{i}]", f"has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            _check_number(v, f"head_cls_rows[{i}][{j}]", lo=0.0)

    word_indices: set[int] = set()
    prev_nonspecial: tuple[int, TokenInfo] | None = None
    for i, tok in enumerate(record.tokens):
        path = f"tokens[{i}]"
        if tok.special:
            if tok.word_index != -1:
                raise _err(f"{path}.word_index", "must be -1 for special tokens")
            if tok.start != 0 or tok.end != 0:
                raise _err(path, "special tokens must have start == end == 0")
            continue
        if tok.word_index < 0:
            raise _err(f"{path}.word_index", "must be >= 0 for non-special tokens")
        if tok.start > tok.end:
            raise _err(path, f"start {tok.start} exceeds end {tok.end}")
        if tok.start < 0:
            raise _err(f"{path}.start", "must be >= 0")
        if tok.end > text_len:
            raise _err(f"{path}.end", "exceeds text length")
        if prev_nonspecial is not None:
            pi, prev = prev_nonspecial
            if tok.start < prev.end:
                raise _err(
                    f"tokens[{pi}]/tokens[{i}]",
                    f"offsets overlap or decrease ([{prev.start},{prev.end}) then [{tok.start},{tok.end}))",
                )
        prev_nonspecial = (i, tok)
        word_indices.add(tok.word_index)

    if word_indices and word_indices != set(range(len(word_indices))):
        raise _err("tokens", f"word_index values must be contiguous from 0, got {sorted(word_indices)}")

    if record.parse is not None:
        word_count = len(word_indices)
        for i, arc in enumerate(record.parse):
            path = f"parse[{i}]"
            if not arc.label:
                raise _err(f"{path}.label", "must be non-empty")
            if not 0 <= arc.word_index < word_count:
                raise _err(f"{path}.word_index", f"{arc.word_index} is not a valid word index")
            if not 0 <= arc.head < word_count:
                raise _err(f"{path}.head", f"{arc.head} is not a valid word index")


def parse_attention_record(data: bytes | str, strict: bool = True) -> AttentionRecord:
    """Decode and fully validate a schema-v1 record.

    Strict mode rejects unknown fields at every level.  Errors carry the
    JSON path of the violated invariant.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise _err("$", f"not valid UTF-8: {e}") from e
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise _err("$", f"not valid JSON: {e}") from e
    return record_from_obj(obj, strict=strict)


def record_from_obj(obj, strict: bool = True) -> AttentionRecord:
    """Build and validate an AttentionRecord from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise _err("$", "record must be a JSON object")
    if strict:
        unknown = set(obj) - _RECORD_FIELDS
        if unknown:
            raise _err("$", f"unknown fields: {sorted(unknown)}")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise _err("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")

    tokens_raw = _require(obj, "tokens", "")
    if not isinstance(tokens_raw, list):
        raise _err("tokens", "must be an array")
    tokens = tuple(_parse_token(t, i, strict) for i, t in enumerate(tokens_raw))

    rows_raw = _require(obj, "head_cls_rows", "")
    if not isinstance(rows_raw, list):
        raise _err("head_cls_rows", "must be an array")
    rows = []
    for i, row in enumerate(rows_raw):
        if not isinstance(row, list):
            raise _err(f"head_cls_rows[{i}]", "must be an array")
        rows.append(tuple(float(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v for v in row))

    parse_raw = obj.get("parse")
    parse: tuple[ParseArc, ...] | None = None
    if parse_raw is not None:
        if not isinstance(parse_raw, list):
            raise _err("parse", "must be an array or null")
        parse = tuple(_parse_arc(a, i, strict) for i, a in enumerate(parse_raw))

    record = AttentionRecord(
        text=_check_str(_require(obj, "text", ""), "text"),
        language=_check_str(_require(obj, "language", ""), "language"),
        tokens=tokens,
        head_cls_rows=tuple(rows),
        layer_index=_check_int(_require(obj, "layer_index", ""), "layer_index"),
        classifier_label=_check_str(_require(obj, "classifier_label", ""), "classifier_label"),
        classifier_score=_check_number(
            _require(obj, "classifier_score", ""), "classifier_score", lo=0.0, hi=1.0
        ),
        parse=parse,
    )
    validate_record(record)
    return record


def record_to_obj(record: AttentionRecord) -> dict:
    """Schema-v1 JSON object for a record (inverse of record_from_obj)."""
    obj: dict = {
        "schema_version": SCHEMA_VERSION,
        "text": record.text,
        "language": record.language,
        "tokens": [
            {
                "text": t.text,
                "start": t.start,
                "end": t.end,
                "word_index": t.word_index,
                "special": t.special,
            }
            for t in record.tokens
        ],
        "head_cls_rows": [list(row) for row in record.head_cls_rows],
        "layer_index": record.layer_index,
        "classifier_label": record.classifier_label,
        "classifier_score": record.classifier_score,
    }
    if record.parse is not None:
        obj["parse"] = [
            {"word_index": a.word_index, "head": a.head, "label": a.label, "pos": a.pos}
            for a in record.parse
        ]
    return obj


def serialize_attention_record(record: AttentionRecord) -> str:
    """Serialize to schema-v1 JSON; parse of the result is the identity."""
    return json.dumps(record_to_obj(record), ensure_ascii=False)


def _ranges_from_json(raw, path: str, text_len: int) -> tuple[tuple[int, int], ...]:
    if not isinstance(raw, list):
        raise _err(path, "must be an array of [start, end] pairs")
    out = []
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(v, bool) or not isinstance(v, int) for v in pair)
        ):
            raise _err(f"{path}[{i}]", "must be an integer [start, end] pair")
        s, e = pair
        if not (0 <= s <= e <= text_len):
            raise _err(f"{path}[{i}]", f"span [{s}, {e}) out of bounds for text of length {text_len}")
        out.append((s, e))
    return tuple(out)


def gold_example_from_obj(obj, default_id: str) -> GoldExample:
    """Build a GoldExample from one decoded gold-JSONL object."""
    if not isinstance(obj, dict):
        raise _err("$", "row must be a JSON object")
    text = _check_str(_require(obj, "text", ""), "text")
    ex_id = str(obj.get("id", default_id))
    language = str(obj.get("language", "en"))
    has_chars = "gold_chars" in obj
    has_pairs = "pairs" in obj
    if has_chars == has_pairs:
        raise _err("$", "exactly one of 'gold_chars' or 'pairs' required")
    if has_chars:
        raw = obj["gold_chars"]
        if not isinstance(raw, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in raw
        ):
            raise _err("gold_chars", "must be an array of integers")
        for v in raw:
            if not 0 <= v < len(text):
                raise _err("gold_chars", f"offset {v} out of bounds")
        return GoldExample(
            id=ex_id, text=text, language=language, gold_char_set=frozenset(raw)
        )
    pairs_raw = obj["pairs"]
    if not isinstance(pairs_raw, list) or not pairs_raw:
        raise _err("pairs", "must be a non-empty array")
    pairs = []
    for i, p in enumerate(pairs_raw):
        path = f"pairs[{i}]"
        if not isinstance(p, dict):
            raise _err(path, "must be an object")
        target_raw = p.get("target")
        target = (
            None
            if target_raw is None
            else _ranges_from_json(target_raw, f"{path}.target", len(text))
        )
        argument = _ranges_from_json(
            _require(p, "argument", path), f"{path}.argument", len(text)
        )
        if not argument:
            raise _err(f"{path}.argument", "must be non-empty")
        pairs.append(GoldPair(target=target, argument=argument))
    return GoldExample(id=ex_id, text=text, language=language, pairs=tuple(pairs))


def load_gold_dataset(path: str, format: str) -> list[GoldExample]:
    """Load and validate a gold dataset.

    ``tsd_csv`` expects columns "spans" (JSON int list) and "text";
    ``tbo_jsonl`` expects one object per line with "id", "text", and
    "pairs".  Bad rows are logged with their line number and skipped; a
    file with zero usable rows is a hard error.
    """
    if format == "tsd_csv":
        examples, errors = _load_tsd_csv(path)
    elif format == "tbo_jsonl":
        examples, errors = _load_tbo_jsonl(path)
    else:
        raise ValueError(f"unknown gold format {format!r} (use 'tsd_csv' or 'tbo_jsonl')")
    for line_no, msg in errors:
        logger.warning("%s line %d: %s", path, line_no, msg)
    if not examples:
        detail = "; ".join(f"line {n}: {m}" for n, m in errors[:5])
        raise GoldDatasetError(
            f"{path}: no usable rows" + (f" ({detail})" if detail else " (file is empty)")
        )
    return examples


def _load_tsd_csv(path: str) -> tuple[list[GoldExample], list[tuple[int, str]]]:
    examples: list[GoldExample] = []
    errors: list[tuple[int, str]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"spans", "text"} <= set(reader.fieldnames):
            raise GoldDatasetError(f"{path}: expected CSV header with 'spans' and 'text' columns")
        for line_no, row in enumerate(reader, start=2):
            try:
                spans = json.loads(row["spans"])
                ex = gold_example_from_obj(
                    {"text": row["text"], "gold_chars": spans, "language": "en"},
                    default_id=str(line_no - 2),
                )
                examples.append(ex)
            except (RecordValidationError, ValueError) as e:
                errors.append((line_no, str(e)))
    return examples, errors


def _load_tbo_jsonl(path: str) -> tuple[list[GoldExample], list[tuple[int, str]]]:
    examples: list[GoldExample] = []
    errors: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                examples.append(gold_example_from_obj(obj, default_id=str(line_no - 1)))
            except (RecordValidationError, ValueError) as e:
                errors.append((line_no, str(e)))
    return examples, errors
