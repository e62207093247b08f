import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muted.attention_core import ExtractionConfig, extract_spans, normalize_scores
from muted.interchange import parse_attention_record
from muted.target_argument import TargetArgumentPair
from muted.visualization import render_heatmap_html, render_roles_html, render_page_html
from support import (
    FIXTURE_NAMES,
    make_random_record,
    read_fixture_record_bytes,
    strip_markup,
)

# text generation for fuzzing: printable unicode incl. emoji/combining marks
_text_st = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc")),
    min_size=0,
    max_size=40,
)


def _fixture(name):
    return parse_attention_record(read_fixture_record_bytes(name))


def _scores_for(record):
    pred = extract_spans(record, ExtractionConfig())
    return normalize_scores(pred.word_scores)


class TestHeatmap:
    def test_alpha_one_formats_as_1_00(self):
        record = _fixture("fixture_en_1")
        html = render_heatmap_html(record, _scores_for(record))
        assert "rgba(255, 0, 0, 1.00)" in html  # the top word

    def test_alpha_zero_formats_as_0_00(self):
        record = _fixture("fixture_en_1")
        scores = [(w, 0.0) for w, _ in _scores_for(record)]
        html = render_heatmap_html(record, scores)
        assert "rgba(255, 0, 0, 0.00)" in html
        assert "1.00" not in html

    def test_words_in_order_with_original_separators(self):
        record = _fixture("fixture_en_1")
        html = render_heatmap_html(record, _scores_for(record))
        assert strip_markup(html) == record.text
        assert html.index(">you<") < html.index(">are<") < html.index(">really<")

    def test_rounding_to_two_decimals(self):
        record = _fixture("fixture_en_1")
        # word 0 with score 1/3 must render as 0.33
        scores = [(w, (1 / 3 if w == 0 else 1.0)) for w, _ in _scores_for(record)]
        html = render_heatmap_html(record, scores)
        assert "rgba(255, 0, 0, 0.33)" in html

    def test_colorblind_palette(self):
        record = _fixture("fixture_en_1")
        html = render_heatmap_html(record, _scores_for(record), palette="colorblind")
        assert "rgba(0, 114, 178" in html
        assert "rgba(255, 0, 0" not in html

    def test_unknown_palette(self):
        record = _fixture("fixture_en_1")
        with pytest.raises(ValueError, match="palette"):
            render_heatmap_html(record, _scores_for(record), palette="neon")

    def test_score_out_of_range_rejected(self):
        record = _fixture("fixture_en_1")
        scores = [(w, 2.0) for w, _ in _scores_for(record)]
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            render_heatmap_html(record, scores)

    def test_score_word_mismatch_rejected(self):
        record = _fixture("fixture_en_1")
        with pytest.raises(ValueError, match="one score per word"):
            render_heatmap_html(record, [(0, 0.5)])

    def test_specials_only_record(self):
        record = _fixture("fixture_specials_only")
        html = render_heatmap_html(record, [])
        assert strip_markup(html) == "!!"
        assert "muted-word" not in html

    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_round_trip_on_fixtures(self, name):
        record = _fixture(name)
        html = render_heatmap_html(record, _scores_for(record))
        assert strip_markup(html) == record.text

    def test_round_trip_on_fuzzed_records(self):
        rng = random.Random(21)
        for _ in range(60):
            record = make_random_record(rng)
            html = render_heatmap_html(record, _scores_for(record))
            assert strip_markup(html) == record.text

    def test_hostile_word_text_escaped(self):
        rng = random.Random(22)
        record = make_random_record(rng, max_words=2)
        hostile = record.text[:0] + "<script>alert(1)</script>" + record.text
        # rebuild with hostile text under the first word hull
        from muted.attention_core import AttentionRecord, TokenInfo

        tokens = (
            TokenInfo("[CLS]", 0, 0, -1, True),
            TokenInfo(hostile[0:8], 0, 8, 0, False),
            TokenInfo("[SEP]", 0, 0, -1, True),
        )
        record = AttentionRecord(
            text=hostile, language="en", tokens=tokens,
            head_cls_rows=((0.1, 0.9, 0.1),), layer_index=0,
            classifier_label="hap", classifier_score=0.5,
        )
        html = render_heatmap_html(record, [(0, 1.0)])
        assert "<script" not in html
        assert "&lt;script&gt;" in html
        assert strip_markup(html) == hostile


class TestRoles:
    def test_fig_style_pair_boxed_and_labeled(self):
        record = _fixture("fixture_en_2")
        pred = extract_spans(record, ExtractionConfig())
        from muted.target_argument import assign_roles

        pair = assign_roles(pred, record.parse, record.tokens, record.text)
        html = render_roles_html(record.text, pair)
        assert '<span class="muted-target" data-role="TARGET">people</span>' in html
        assert 'data-role="ARGUMENT">haters</span>' in html
        assert strip_markup(html) == record.text

    def test_empty_pair_text_unchanged(self):
        pair = TargetArgumentPair((), ())
        html = render_roles_html("just some text", pair)
        assert html == '<div class="muted-roles">just some text</div>'

    def test_whole_text_argument_single_box(self):
        text = "all offensive"
        pair = TargetArgumentPair((), ((0, len(text)),))
        html = render_roles_html(text, pair)
        assert html.count("muted-argument") >= 1
        assert 'data-role="ARGUMENT">all offensive</span>' in html
        assert strip_markup(html) == text

    def test_argument_only_still_labeled(self):
        pair = TargetArgumentPair((), ((0, 3),))
        html = render_roles_html("bad words", pair)
        assert 'data-role="ARGUMENT"' in html
        assert "ARGUMENT" in html

    def test_overlapping_roles_hard_error(self):
        pair = TargetArgumentPair(((0, 5),), ((3, 8),))
        with pytest.raises(ValueError, match="overlap"):
            render_roles_html("0123456789", pair)

    def test_out_of_bounds_span(self):
        pair = TargetArgumentPair(((0, 99),), ())
        with pytest.raises(ValueError, match="bounds"):
            render_roles_html("short", pair)

    def test_hostile_text_escaped(self):
        text = 'x <script>alert("y")</script> z'
        pair = TargetArgumentPair(((0, 1),), ((2, 29),))
        html = render_roles_html(text, pair)
        assert "<script" not in html
        assert strip_markup(html) == text

    @given(_text_st, st.data())
    @settings(max_examples=120, deadline=None)
    def test_round_trip_fuzzed(self, text, data):
        n_spans = data.draw(st.integers(0, 3))
        cuts = sorted(data.draw(
            st.lists(st.integers(0, len(text)), min_size=2 * n_spans, max_size=2 * n_spans)
        ))
        ranges = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(n_spans)]
        ranges = [r for r in ranges if r[0] < r[1]]
        # de-overlap: drop ranges that collide with an earlier one
        clean, prev_end = [], -1
        for s, e in ranges:
            if s >= prev_end:
                clean.append((s, e))
                prev_end = e
        target = tuple(clean[::2])
        argument = tuple(clean[1::2])
        pair = TargetArgumentPair(target, argument)
        assert strip_markup(render_roles_html(text, pair)) == text

    def test_no_script_elements_ever(self):
        record = _fixture("fixture_en_2")
        pred = extract_spans(record, ExtractionConfig())
        from muted.target_argument import assign_roles

        pair = assign_roles(pred, record.parse, record.tokens, record.text)
        for html in (
            render_heatmap_html(record, _scores_for(record)),
            render_roles_html(record.text, pair),
        ):
            assert "<script" not in html.lower()


def test_render_page_is_a_full_document():
    record = _fixture("fixture_de")
    pred = extract_spans(record, ExtractionConfig())
    html = render_heatmap_html(record, normalize_scores(pred.word_scores))
    page = render_page_html("t", html, '<div class="muted-roles"></div>', "hap", 0.9)
    assert page.startswith("<!DOCTYPE html>")
    assert "muted-heatmap" in page
