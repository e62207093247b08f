import random

import pytest

from muted.attention_core import ExtractionConfig, ParseArc, extract_spans
from muted.interchange import parse_attention_record
from muted.target_argument import (
    MissingParseError,
    TargetArgumentPair,
    argument_only_pair,
    assign_roles,
)
from support import make_random_record, read_fixture_record_bytes

CFG = ExtractionConfig(threshold=0.6, mode="relative")


def _fixture(name):
    record = parse_attention_record(read_fixture_record_bytes(name))
    return record, extract_spans(record, CFG)


def test_english_subject_becomes_target():
    # "people are really negative ass haters": people seeds the target,
    # every other selected word is argument
    record, pred = _fixture("fixture_en_2")
    pair = assign_roles(pred, record.parse, record.tokens, record.text)
    assert pair.target_char_spans == ((0, 6),)
    assert record.text[0:6] == "people"
    assert pair.argument_char_spans == ((11, 17), (18, 26), (27, 30), (31, 37))
    assert record.text[11:17] == "really"
    assert record.text[31:37] == "haters"


def test_german_subject_becomes_target():
    record, pred = _fixture("fixture_de")
    pair = assign_roles(pred, record.parse, record.tokens, record.text)
    assert [record.text[s:e] for s, e in pair.target_char_spans] == ["Politiker"]
    assert [record.text[s:e] for s, e in pair.argument_char_spans] == ["lügen", "notorisch"]


def test_no_subject_means_no_target():
    record, pred = _fixture("fixture_en_2")
    parse = tuple(
        ParseArc(a.word_index, a.head, "dobj" if "subj" in a.label else a.label, a.pos)
        for a in record.parse
    )
    pair = assign_roles(pred, parse, record.tokens, record.text)
    assert pair.target_char_spans == ()
    assert set(pair.argument_char_spans) == set(pred.char_spans)


def _picked_words(pair: TargetArgumentPair, record, pred):
    """Map role spans back to word indices via each word's char hull."""
    from muted.attention_core import word_char_hulls

    hulls = word_char_hulls(record.tokens)
    target, argument = set(), set()
    for w in pred.selected_words:
        s, e = hulls[w]
        chars = set(range(s, e))
        if chars <= pair.target_char_set:
            target.add(w)
        elif chars <= pair.argument_char_set:
            argument.add(w)
    return target, argument


def test_modifier_expansion_pulls_chain_into_target():
    # w0 big -amod-> w1 dogs -compound-> w2 owners(nsubj); all selected
    rng = random.Random(5)
    record = make_random_record(rng, max_words=3)
    while record.word_count != 3:
        record = make_random_record(rng, max_words=3)
    parse = (
        ParseArc(0, 1, "amod", "ADJ"),
        ParseArc(1, 2, "compound", "NOUN"),
        ParseArc(2, 2, "nsubj", "NOUN"),
    )
    pred = extract_spans(record, ExtractionConfig(threshold=0.0, mode="relative"))
    assert pred.selected_words == {0, 1, 2}
    pair = assign_roles(pred, parse, record.tokens, record.text)
    target, argument = _picked_words(pair, record, pred)
    assert target == {0, 1, 2}
    assert argument == set()

    no_expand = assign_roles(pred, parse, record.tokens, record.text, expand_modifiers=False)
    target2, argument2 = _picked_words(no_expand, record, pred)
    assert target2 == {2}
    assert argument2 == {0, 1}


def test_expansion_requires_selected_intermediates():
    # same chain, but the middle word is not selected: w0 cannot reach the seed
    rng = random.Random(6)
    record = make_random_record(rng, max_words=3)
    while record.word_count != 3:
        record = make_random_record(rng, max_words=3)
    parse = (
        ParseArc(0, 1, "amod", "ADJ"),
        ParseArc(1, 2, "compound", "NOUN"),
        ParseArc(2, 2, "nsubj", "NOUN"),
    )
    pred = extract_spans(record, ExtractionConfig(threshold=0.0, mode="relative"))
    trimmed = type(pred)(
        selected_tokens=pred.selected_tokens,
        word_scores=pred.word_scores,
        selected_words=frozenset({0, 2}),
        char_spans=pred.char_spans,
        char_set=pred.char_set,
    )
    pair = assign_roles(trimmed, parse, record.tokens, record.text)
    target, _ = _picked_words(pair, record, trimmed)
    assert target == {2}


def test_subtyped_labels_match():
    rng = random.Random(16)
    record = make_random_record(rng, max_words=2)
    while record.word_count != 2:
        record = make_random_record(rng, max_words=2)
    parse = (
        ParseArc(0, 1, "det:predet", "DET"),
        ParseArc(1, 1, "nsubjpass", "NOUN"),
    )
    pred = extract_spans(record, ExtractionConfig(threshold=0.0, mode="relative"))
    pair = assign_roles(pred, parse, record.tokens, record.text)
    target, argument = _picked_words(pair, record, pred)
    assert target == {0, 1}


def test_role_partition_and_disjointness():
    rng = random.Random(11)
    checked = 0
    while checked < 40:
        record = make_random_record(rng, with_parse=True)
        if not record.word_count:
            continue
        pred = extract_spans(record, ExtractionConfig(threshold=0.5, mode="relative"))
        pair = assign_roles(pred, record.parse, record.tokens, record.text)
        assert pair.target_char_set & pair.argument_char_set == frozenset()
        assert pair.target_char_set | pair.argument_char_set == pred.char_set
        assert pair.target_char_set <= pred.char_set
        checked += 1


def test_arc_order_irrelevant():
    record, pred = _fixture("fixture_en_2")
    shuffled = list(record.parse)
    random.Random(3).shuffle(shuffled)
    a = assign_roles(pred, record.parse, record.tokens, record.text)
    b = assign_roles(pred, tuple(shuffled), record.tokens, record.text)
    assert a == b


def test_missing_parse_instructs_fallback():
    record, pred = _fixture("fixture_en_1")
    with pytest.raises(MissingParseError, match="argument-only"):
        assign_roles(pred, None, record.tokens, record.text)


def test_uncovered_selected_word_is_missing_parse():
    record, pred = _fixture("fixture_en_2")
    partial = tuple(a for a in record.parse if a.word_index != 0)
    with pytest.raises(MissingParseError, match=r"\[0\]"):
        assign_roles(pred, partial, record.tokens, record.text)


def test_argument_only_pair():
    record, pred = _fixture("fixture_en_1")
    pair = argument_only_pair(pred)
    assert pair.target_char_spans == ()
    assert pair.argument_char_spans == pred.char_spans
