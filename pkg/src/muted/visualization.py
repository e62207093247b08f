"""HTML fragments for attention heatmaps and role markup.

Both renderers emit self-contained fragments with no external assets and
no script elements.  All user text is HTML-escaped, and the visible text
content of a fragment is exactly the input text: highlights come from
inline styles, role labels from CSS-generated content (``::after`` reading
a ``data-role`` attribute), never from extra text nodes.

Stable CSS class contract consumed by the web UI:
``muted-heatmap`` / ``muted-roles`` wrappers, ``muted-word`` per word,
``muted-target`` and ``muted-argument`` per role span.
"""

from __future__ import annotations

import html

from .attention_core import AttentionRecord, word_char_hulls
from .target_argument import TargetArgumentPair

# White-to-red ramp matches the classic heatmap look; the colorblind
# palette uses Okabe-Ito blue instead.
_PALETTES = {
    "red": "255, 0, 0",
    "colorblind": "0, 114, 178",
}

_ROLE_CSS = (
    "<style>"
    ".muted-target,.muted-argument{border:1px solid;border-radius:3px;"
    "padding:0 2px;margin:0 1px;}"
    ".muted-target{border-color:#0072b2;background:rgba(0,114,178,0.12);}"
    ".muted-argument{border-color:#d55e00;background:rgba(213,94,0,0.12);}"
    ".muted-target::after,.muted-argument::after{content:attr(data-role);"
    "font-size:0.62em;font-weight:bold;vertical-align:super;margin-left:3px;}"
    ".muted-target::after{color:#0072b2;}"
    ".muted-argument::after{color:#d55e00;}"
    "</style>"
)


def render_heatmap_html(
    record: AttentionRecord,
    word_scores_normalized,
    palette: str = "red",
) -> str:
    """Wrap each word of the text in a span whose background alpha is its
    normalized score (rounded to two decimals).

    Inter-word characters are preserved exactly as in the original text;
    text outside any word (including an all-special record) passes through
    escaped but unhighlighted.
    """
    if palette not in _PALETTES:
        raise ValueError(f"unknown palette {palette!r} (one of {sorted(_PALETTES)})")
    rgb = _PALETTES[palette]
    scores = dict(word_scores_normalized)
    hulls = word_char_hulls(record.tokens)
    if set(scores) != set(hulls):
        raise ValueError(
            f"need one score per word: words {sorted(hulls)} vs scores {sorted(scores)}"
        )
    for w, s in scores.items():
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"score for word {w} must be in [0, 1], got {s}")

    ordered = sorted(hulls.items(), key=lambda kv: kv[1])
    prev_end = 0
    parts = ['<div class="muted-heatmap">']
    for w, (start, end) in ordered:
        if start < prev_end:
            raise ValueError(f"word {w} hull overlaps the previous word")
        parts.append(html.escape(record.text[prev_end:start]))
        alpha = f"{scores[w]:.2f}"
        parts.append(
            f'<span class="muted-word" data-word-index="{w}" '
            f'style="background-color: rgba({rgb}, {alpha})">'
            f"{html.escape(record.text[start:end])}</span>"
        )
        prev_end = end
    parts.append(html.escape(record.text[prev_end:]))
    parts.append("</div>")
    return "".join(parts)


def render_roles_html(text: str, pair: TargetArgumentPair) -> str:
    """Box target spans (labeled TARGET) and argument spans (labeled
    ARGUMENT); everything else passes through unmodified.

    Labels render via CSS-generated content so the fragment's visible text
    stays exactly the input text.  Overlapping target/argument spans are a
    hard error: they violate the pair's disjointness invariant.
    """
    spans = [(s, e, "muted-target", "TARGET") for s, e in pair.target_char_spans]
    spans += [(s, e, "muted-argument", "ARGUMENT") for s, e in pair.argument_char_spans]
    spans.sort(key=lambda x: (x[0], x[1]))
    prev_end = 0
    for s, e, _, _ in spans:
        if s < prev_end:
            raise ValueError("target and argument spans overlap")
        if not (0 <= s <= e <= len(text)):
            raise ValueError(f"span [{s}, {e}) out of bounds")
        prev_end = e

    parts = ['<div class="muted-roles">']
    if spans:
        parts.append(_ROLE_CSS)
    prev_end = 0
    for s, e, css_class, label in spans:
        parts.append(html.escape(text[prev_end:s]))
        parts.append(
            f'<span class="{css_class}" data-role="{label}">'
            f"{html.escape(text[s:e])}</span>"
        )
        prev_end = e
    parts.append(html.escape(text[prev_end:]))
    parts.append("</div>")
    return "".join(parts)


def render_page_html(
    title: str,
    heatmap_html: str,
    roles_html: str,
    classifier_label: str,
    classifier_score: float,
) -> str:
    """Complete standalone page embedding the two fragments (CLI output)."""
    return (
        "<!DOCTYPE html>\n"
        '<html lang="en"><head><meta charset="utf-8">'
        f"<title>{html.escape(title)}</title>"
        "<style>body{font-family:sans-serif;max-width:48em;margin:2em auto;"
        "line-height:1.8;}h2{font-size:1em;color:#555;}</style>"
        "</head><body>"
        f"<p>classifier: <strong>{html.escape(classifier_label)}</strong> "
        f"(score {classifier_score:.4f})</p>"
        f"<h2>Attention heatmap</h2>{heatmap_html}"
        f"<h2>Roles</h2>{roles_html}"
        "</body></html>\n"
    )
