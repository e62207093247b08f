"""Encoder backends that classify a text and expose last-layer first-token
attention rows.

The builtin backend is a small randomly-initialized torch encoder with a
fixed seed: it produces genuine multi-head attention distributions and a
softmax verdict with zero downloads, which is what offline smoke testing
and schema contracts need. Point ADAPTER_MODEL at a local HuggingFace
checkpoint directory to serve a trained classifier instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn

from .tokenizer import HashBucketTokenizer, Token


@dataclass(frozen=True, slots=True)
class EncoderOutput:
    tokens: list[Token]
    head_cls_rows: list[list[float]]
    layer_index: int
    label: str
    score: float


class TextTooLongError(ValueError):
    """Input exceeds the configured character or position budget."""


class TinyHapEncoder(nn.Module):
    """Two-layer, four-head encoder over the hash-bucket vocabulary."""

    def __init__(
        self,
        vocab_size: int = 4096,
        dim: int = 64,
        heads: int = 4,
        layers: int = 2,
        max_positions: int = 512,
        seed: int = 1337,
    ):
        super().__init__()
        torch.manual_seed(seed)
        self.heads = heads
        self.n_layers = layers
        self.max_positions = max_positions
        self.embed = nn.Embedding(vocab_size, dim)
        self.pos = nn.Embedding(max_positions, dim)
        self.attn = nn.ModuleList(
            [nn.MultiheadAttention(dim, heads, batch_first=True) for _ in range(layers)]
        )
        self.norm1 = nn.ModuleList([nn.LayerNorm(dim) for _ in range(layers)])
        self.norm2 = nn.ModuleList([nn.LayerNorm(dim) for _ in range(layers)])
        self.ffn = nn.ModuleList(
            [
                nn.Sequential(nn.Linear(dim, dim * 2), nn.GELU(), nn.Linear(dim * 2, dim))
                for _ in range(layers)
            ]
        )
        self.classifier = nn.Linear(dim, 2)  # index 1 = hap
        self.eval()

    @torch.no_grad()
    def forward_with_attention(self, ids: list[int]) -> tuple[torch.Tensor, torch.Tensor]:
        """Returns (logits[2], last-layer per-head attention [H, n, n])."""
        n = len(ids)
        x = self.embed(torch.tensor([ids])) + self.pos(torch.arange(n)).unsqueeze(0)
        last_attn = None
        for i in range(self.n_layers):
            attended, weights = self.attn[i](
                x, x, x, need_weights=True, average_attn_weights=False
            )
            last_attn = weights[0]
            x = self.norm1[i](x + attended)
            x = self.norm2[i](x + self.ffn[i](x))
        logits = self.classifier(x[0, 0])
        return logits, last_attn


class BuiltinBackend:
    """Deterministic offline backend around TinyHapEncoder."""

    name = "builtin:tiny"

    def __init__(self, seed: int = 1337):
        self.tokenizer = HashBucketTokenizer()
        self.model = TinyHapEncoder(vocab_size=self.tokenizer.vocab_size, seed=seed)

    def attend(self, text: str) -> EncoderOutput:
        tokens = self.tokenizer.tokenize(text)
        if len(tokens) > self.model.max_positions:
            raise TextTooLongError(
                f"{len(tokens)} tokens exceed the {self.model.max_positions}-position budget"
            )
        ids = [t.id for t in tokens]
        logits, attn = self.model.forward_with_attention(ids)
        probs = torch.softmax(logits, dim=-1)
        hap_p = float(probs[1])
        label = "hap" if hap_p >= 0.5 else "clean"
        score = hap_p if label == "hap" else float(probs[0])
        rows = [[float(v) for v in attn[h, 0, :]] for h in range(self.model.heads)]
        return EncoderOutput(
            tokens=tokens,
            head_cls_rows=rows,
            layer_index=self.model.n_layers - 1,
            label=label,
            score=_clamp01(score),
        )


class HuggingFaceBackend:
    """Serves a local trained checkpoint (no downloads attempted).

    The checkpoint's fast tokenizer provides the character offset mapping
    and word ids; ``hap_label_index`` names the logit treated as the HAP
    class. Models without a pooled first token are not auto-detected: the
    exported rows are always the attention of sequence position 0 of the
    last layer, and ``layer_index`` records which layer that was.
    """

    def __init__(self, model_dir: str, hap_label_index: int = 1):
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        self.tokenizer = AutoTokenizer.from_pretrained(model_dir, use_fast=True)
        self.model = AutoModelForSequenceClassification.from_pretrained(
            model_dir, output_attentions=True
        )
        self.model.eval()
        self.hap_label_index = hap_label_index
        self.name = f"hf:{model_dir}"

    @torch.no_grad()
    def attend(self, text: str) -> EncoderOutput:
        enc = self.tokenizer(
            text, return_offsets_mapping=True, return_tensors="pt", truncation=False
        )
        max_pos = getattr(self.model.config, "max_position_embeddings", 512)
        if enc["input_ids"].shape[1] > max_pos:
            raise TextTooLongError(
                f"{enc['input_ids'].shape[1]} tokens exceed the model's {max_pos} positions"
            )
        offsets = enc["offset_mapping"][0].tolist()
        word_ids = enc.word_ids()
        out = self.model(
            input_ids=enc["input_ids"], attention_mask=enc["attention_mask"]
        )
        attn = out.attentions[-1][0]  # [H, n, n]
        probs = torch.softmax(out.logits[0], dim=-1)
        hap_p = float(probs[self.hap_label_index])
        label = "hap" if hap_p >= 0.5 else "clean"
        score = hap_p if label == "hap" else float(1.0 - hap_p)

        # remap word ids to contiguous indices starting at 0
        remap: dict[int, int] = {}
        tokens: list[Token] = []
        ids = enc["input_ids"][0].tolist()
        for i, (tok_id, (s, e)) in enumerate(zip(ids, offsets)):
            wid = word_ids[i]
            special = wid is None
            if special:
                s = e = 0
                w = -1
            else:
                if wid not in remap:
                    remap[wid] = len(remap)
                w = remap[wid]
            tokens.append(
                Token(
                    text=text[s:e] if not special else self.tokenizer.decode([tok_id]),
                    start=s,
                    end=e,
                    word_index=w,
                    special=special,
                    id=tok_id,
                )
            )
        rows = [[float(v) for v in attn[h, 0, :]] for h in range(attn.shape[0])]
        return EncoderOutput(
            tokens=tokens,
            head_cls_rows=rows,
            layer_index=self.model.config.num_hidden_layers - 1,
            label=label,
            score=_clamp01(score),
        )


def _clamp01(v: float) -> float:
    return min(1.0, max(0.0, v))


def load_backend(model_spec: str | None, seed: int = 1337):
    """``None``/"builtin:tiny" gives the offline encoder; anything else is
    treated as a local HuggingFace checkpoint directory."""
    if not model_spec or model_spec == "builtin:tiny":
        return BuiltinBackend(seed=seed)
    return HuggingFaceBackend(model_spec)
