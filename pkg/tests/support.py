"""Shared test helpers: fixture paths, a fuzz record generator, and an
HTML-to-text stripper for the renderer round-trip checks."""

from __future__ import annotations

import random
from html.parser import HTMLParser
from pathlib import Path

from muted.attention_core import AttentionRecord, ParseArc, TokenInfo

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_RECORDS = REPO_ROOT / "fixtures" / "records"
FIXTURE_EXPECTED = REPO_ROOT / "fixtures" / "expected"
TEST_DATA = Path(__file__).resolve().parent / "data"

FIXTURE_NAMES = [
    "fixture_en_1",
    "fixture_en_2",
    "fixture_specials_only",
    "fixture_emoji",
    "fixture_de",
    "fixture_en_3_merge",
]

_WORD_CHARS = "abcdefghijklmnopqrstuvwxyzäüßéñ🤬💩"
_DEP_LABELS = ["nsubj", "dobj", "det", "amod", "advmod", "root", "attr", "compound", "obj"]


class _TextExtractor(HTMLParser):
    """Collects visible text, skipping style/script element content."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._skip = 0
        self.parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in ("style", "script"):
            self._skip += 1

    def handle_endtag(self, tag):
        if tag in ("style", "script") and self._skip:
            self._skip -= 1

    def handle_data(self, data):
        if not self._skip:
            self.parts.append(data)


def strip_markup(fragment: str) -> str:
    parser = _TextExtractor()
    parser.feed(fragment)
    parser.close()
    return "".join(parser.parts)


def make_random_record(
    rng: random.Random,
    with_parse: bool = False,
    max_words: int = 8,
) -> AttentionRecord:
    """A random record satisfying every schema invariant."""
    n_words = rng.randint(0, max_words)
    words: list[tuple[int, int]] = []
    text_parts: list[str] = []
    pos = 0
    for w in range(n_words):
        gap = rng.choice([0, 1, 1, 2]) if w > 0 else 0
        text_parts.append(" " * gap)
        pos += gap
        length = rng.randint(1, 6)
        word = "".join(rng.choice(_WORD_CHARS) for _ in range(length))
        words.append((pos, pos + length))
        text_parts.append(word)
        pos += length
    text = "".join(text_parts)

    tokens = [TokenInfo("[CLS]", 0, 0, -1, True)]
    for w, (start, end) in enumerate(words):
        n_pieces = rng.randint(1, min(3, end - start))
        cuts = sorted(rng.sample(range(start + 1, end), n_pieces - 1)) if n_pieces > 1 else []
        bounds = [start] + cuts + [end]
        for a, b in zip(bounds, bounds[1:]):
            tokens.append(TokenInfo(text[a:b], a, b, w, False))
    tokens.append(TokenInfo("[SEP]", 0, 0, -1, True))

    n = len(tokens)
    heads = rng.randint(1, 6)
    rows = tuple(
        tuple(round(rng.random(), 6) for _ in range(n)) for _ in range(heads)
    )

    parse = None
    if with_parse and n_words:
        arcs = []
        for w in range(n_words):
            label = rng.choice(_DEP_LABELS)
            head = rng.randrange(n_words)
            arcs.append(ParseArc(w, head, label, "X"))
        parse = tuple(arcs)

    return AttentionRecord(
        text=text,
        language=rng.choice(["en", "de", "es"]),
        tokens=tuple(tokens),
        head_cls_rows=rows,
        layer_index=3,
        classifier_label=rng.choice(["hap", "clean"]),
        classifier_score=round(rng.random(), 6),
        parse=parse,
    )


def read_fixture_record_bytes(name: str) -> bytes:
    return (FIXTURE_RECORDS / f"{name}.json").read_bytes()


def read_expected_bytes(name: str) -> bytes:
    return (FIXTURE_EXPECTED / f"{name}.expected.json").read_bytes()
