"""Deterministic offline subword tokenizer with exact character offsets.

Words are maximal non-whitespace runs; each word is chunked into pieces
of at most four characters, and pieces map to a fixed-size vocabulary by
CRC32 bucketing. No vocabulary files, no network, bit-stable across
platforms. All offsets are Unicode scalar indices into the original
string, including for emoji and combining marks.
"""

from __future__ import annotations

import re
import zlib
from dataclasses import dataclass

_WORD_RE = re.compile(r"\S+")

PAD_ID, UNK_ID, CLS_ID, SEP_ID = 0, 1, 2, 3
N_RESERVED = 4
PIECE_LEN = 4


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    start: int
    end: int
    word_index: int
    special: bool
    id: int


class HashBucketTokenizer:
    """Maps any text to token ids deterministically via hashing."""

    def __init__(self, vocab_size: int = 4096):
        if vocab_size <= N_RESERVED:
            raise ValueError(f"vocab_size must exceed {N_RESERVED}")
        self.vocab_size = vocab_size

    def piece_id(self, piece: str) -> int:
        bucket = zlib.crc32(piece.encode("utf-8")) % (self.vocab_size - N_RESERVED)
        return bucket + N_RESERVED

    def tokenize(self, text: str) -> list[Token]:
        """[CLS] + word pieces + [SEP]; specials carry (0, 0) offsets."""
        tokens = [Token("[CLS]", 0, 0, -1, True, CLS_ID)]
        for w, match in enumerate(_WORD_RE.finditer(text)):
            start = match.start()
            word = match.group()
            for i in range(0, len(word), PIECE_LEN):
                piece = word[i : i + PIECE_LEN]
                tokens.append(
                    Token(
                        text=piece,
                        start=start + i,
                        end=start + i + len(piece),
                        word_index=w,
                        special=False,
                        id=self.piece_id(piece),
                    )
                )
        tokens.append(Token("[SEP]", 0, 0, -1, True, SEP_ID))
        return tokens
