"""Build schema-v1 attention records and batch-export them."""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

from .model import EncoderOutput, TextTooLongError, load_backend
from .parser_backend import align_arcs_to_words, load_parser

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_MAX_CHARS = 2000


class AttendService:
    """One backend + optional parser behind a lock.

    Encoder inference is the bottleneck and is serialized so a single
    model instance keeps bounded memory under concurrent HTTP traffic.
    """

    def __init__(
        self,
        model_spec: str | None = None,
        parser_spec: str | None = None,
        max_chars: int = DEFAULT_MAX_CHARS,
        seed: int = 1337,
    ):
        self.backend = load_backend(model_spec, seed=seed)
        self.parser = load_parser(parser_spec)
        self.max_chars = max_chars
        self._lock = threading.Lock()

    def attend(self, text: str, language: str = "en") -> dict:
        """Schema-v1 record object for one text."""
        if not text:
            raise ValueError("text must be non-empty")
        if len(text) > self.max_chars:
            raise TextTooLongError(
                f"text has {len(text)} characters, limit is {self.max_chars}"
            )
        with self._lock:
            out = self.backend.attend(text)
        return self._to_record(text, language, out)

    def _to_record(self, text: str, language: str, out: EncoderOutput) -> dict:
        record = {
            "schema_version": SCHEMA_VERSION,
            "text": text,
            "language": language,
            "tokens": [
                {
                    "text": t.text,
                    "start": t.start,
                    "end": t.end,
                    "word_index": t.word_index,
                    "special": t.special,
                }
                for t in out.tokens
            ],
            "head_cls_rows": out.head_cls_rows,
            "layer_index": out.layer_index,
            "classifier_label": out.label,
            "classifier_score": out.score,
        }
        if self.parser is not None:
            word_ranges = _word_ranges(out)
            arcs = None
            if word_ranges:
                try:
                    triples = self.parser.parse(text)
                    arcs = align_arcs_to_words(triples, word_ranges)
                except Exception as e:
                    logger.warning("parser failed on %r: %s", text[:40], e)
            if arcs:
                record["parse"] = arcs
        return record


def _word_ranges(out: EncoderOutput) -> list[tuple[int, int]]:
    hulls: dict[int, tuple[int, int]] = {}
    for t in out.tokens:
        if t.special:
            continue
        if t.word_index in hulls:
            s, e = hulls[t.word_index]
            hulls[t.word_index] = (min(s, t.start), max(e, t.end))
        else:
            hulls[t.word_index] = (t.start, t.end)
    return [hulls[w] for w in sorted(hulls)]


def export_dataset(service: AttendService, in_path: str, out_dir: str) -> tuple[int, int, int]:
    """Export one record file per input line; resumable and fault-tolerant.

    Input is TSV with three columns: id, language, text. Lines whose id
    already has a record file are skipped; malformed or failing lines are
    logged and the run continues. Returns (written, skipped, failed).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = skipped = failed = 0
    with open(in_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                logger.warning("line %d: expected 3 tab-separated fields, got %d", line_no, len(parts))
                failed += 1
                continue
            rec_id, language, text = parts
            target = out / f"{rec_id}.json"
            if target.exists():
                skipped += 1
                continue
            try:
                record = service.attend(text, language)
            except Exception as e:
                logger.warning("line %d (id %s): %s", line_no, rec_id, e)
                failed += 1
                continue
            target.write_text(
                json.dumps(record, ensure_ascii=False) + "\n", encoding="utf-8"
            )
            written += 1
    return written, skipped, failed
