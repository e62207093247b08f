"""Optional dependency-parser backends.

A parser is any object with ``parse(text) -> list of (start, dep_label,
head_start)`` triples at parser-token granularity; the adapter aligns
those onto the record's whitespace words. When no backend is available
(the default in offline environments) records ship without a parse and
the downstream pipeline degrades to argument-only roles.
"""

from __future__ import annotations

import logging
from typing import Protocol

logger = logging.getLogger(__name__)


class Parser(Protocol):
    def parse(self, text: str) -> list[tuple[int, str, int]]:
        """(token_char_start, dep_label, head_token_char_start) triples."""
        ...


class SpacyParser:
    """Wraps a spaCy pipeline when one is installed and loadable."""

    def __init__(self, model_name: str):
        import spacy

        self.nlp = spacy.load(model_name)

    def parse(self, text: str) -> list[tuple[int, str, int]]:
        doc = self.nlp(text)
        return [(t.idx, t.dep_.lower(), t.head.idx) for t in doc]


def load_parser(spec: str | None) -> Parser | None:
    """``None``/"none" disables parsing; "spacy:<model>" loads spaCy.

    Load failures are logged and degrade to no parser rather than
    aborting startup: span extraction works without one.
    """
    if not spec or spec == "none":
        return None
    if spec.startswith("spacy:"):
        model_name = spec.split(":", 1)[1]
        try:
            return SpacyParser(model_name)
        except Exception as e:  # missing package or model
            logger.warning("parser %s unavailable (%s); emitting records without parse", spec, e)
            return None
    logger.warning("unknown parser spec %r; emitting records without parse", spec)
    return None


def align_arcs_to_words(
    triples: list[tuple[int, str, int]],
    word_ranges: list[tuple[int, int]],
) -> list[dict] | None:
    """Map parser tokens onto whitespace words by character position.

    Each word takes the label of the first parser token starting inside
    it; the arc head is the word containing the head token's start. Words
    no parser token starts in get a ``dep`` self-loop. Returns None when
    there are no words.
    """
    if not word_ranges:
        return None

    def word_of(pos: int) -> int | None:
        for w, (s, e) in enumerate(word_ranges):
            if s <= pos < e:
                return w
        return None

    label_for: dict[int, tuple[str, int]] = {}
    for start, label, head_start in triples:
        w = word_of(start)
        if w is None or w in label_for:
            continue
        head_w = word_of(head_start)
        label_for[w] = (label, head_w if head_w is not None else w)

    arcs = []
    for w in range(len(word_ranges)):
        label, head = label_for.get(w, ("dep", w))
        arcs.append({"word_index": w, "head": head, "label": label, "pos": ""})
    return arcs
