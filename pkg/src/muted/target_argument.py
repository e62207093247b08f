"""Split predicted high-attention words into a <target, argument> pair.

The target is the entity the offense is directed at; the argument is the
offensive span itself.  Dependency labels drive the split: subject-labeled
selected words seed the target, a small closure over modifier arcs extends
it, and every other selected word is argument.  Predicates and free
modifiers therefore land in the argument, which matches how annotated
pairs are drawn in practice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .attention_core import (
    ParseArc,
    SpanPrediction,
    TokenInfo,
    words_to_char_spans,
)

# Arc labels that pull a selected word into the target along with its head.
# Kept deliberately small; pass expand_modifiers=False to disable.
MODIFIER_LABELS = frozenset({"det", "amod", "compound", "poss", "nmod", "case"})


class MissingParseError(ValueError):
    """No usable dependency parse; callers should fall back to
    argument-only output (everything selected is argument)."""


@dataclass(frozen=True, slots=True)
class TargetArgumentPair:
    """Role-labeled character spans; target may be empty when no subject
    was found among the selected words."""

    target_char_spans: tuple[tuple[int, int], ...]
    argument_char_spans: tuple[tuple[int, int], ...]

    @property
    def target_char_set(self) -> frozenset[int]:
        return frozenset(c for s, e in self.target_char_spans for c in range(s, e))

    @property
    def argument_char_set(self) -> frozenset[int]:
        return frozenset(c for s, e in self.argument_char_spans for c in range(s, e))


def argument_only_pair(pred: SpanPrediction) -> TargetArgumentPair:
    """Degraded output when no parse is available: everything is argument."""
    return TargetArgumentPair(target_char_spans=(), argument_char_spans=pred.char_spans)


def _is_subject(label: str) -> bool:
    return "subj" in label


def _is_modifier(label: str) -> bool:
    return label in MODIFIER_LABELS or label.split(":", 1)[0] in MODIFIER_LABELS


def assign_roles(
    pred: SpanPrediction,
    parse: tuple[ParseArc, ...] | list[ParseArc] | None,
    tokens: tuple[TokenInfo, ...] | list[TokenInfo],
    text: str,
    expand_modifiers: bool = True,
) -> TargetArgumentPair:
    """Partition the selected words into target and argument spans.

    Seeds: selected words whose dependency label contains "subj" (matched
    on the lowercase label, so nsubj/nsubjpass/csubj all qualify).  When
    ``expand_modifiers`` is on, selected words reach the target through
    chains of modifier arcs (det/amod/compound/poss/nmod/case, subtype
    suffixes allowed) whose intermediate words are all selected.  With no
    seed, the target is empty and everything selected is argument.

    Raises MissingParseError when the parse is absent or does not cover
    every selected word.
    """
    if parse is None:
        raise MissingParseError(
            "record has no dependency parse; fall back to argument-only output"
        )
    arcs = {arc.word_index: arc for arc in parse}
    selected = set(pred.selected_words)
    uncovered = sorted(w for w in selected if w not in arcs)
    if uncovered:
        raise MissingParseError(
            f"parse does not cover selected words {uncovered}; "
            "fall back to argument-only output"
        )

    target = {w for w in selected if _is_subject(arcs[w].label)}
    if target and expand_modifiers:
        grew = True
        while grew:
            grew = False
            for w in selected - target:
                if _is_modifier(arcs[w].label) and arcs[w].head in target:
                    target.add(w)
                    grew = True

    argument = selected - target
    target_spans, target_chars = words_to_char_spans(target, tokens, text)
    argument_spans, argument_chars = words_to_char_spans(argument, tokens, text)
    if target_chars & argument_chars:
        raise ValueError(
            "target and argument character sets overlap; record has words "
            "with interleaved token offsets"
        )
    return TargetArgumentPair(
        target_char_spans=tuple(target_spans),
        argument_char_spans=tuple(argument_spans),
    )
