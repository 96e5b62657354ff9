"""Printable artifacts: masked corpus sheets with POS superscripts and
stacked phrase lines, card decks, the translation dictionary, and the
clear-text reveal overlay.

All emitters are pure functions of their inputs; repeated runs produce
byte-identical SVG.  Coordinates are millimetres (the SVG user unit is
mapped to mm via the viewBox) and are always formatted with two decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .corpus import AnnotatedCorpus, Sentence, canonical_json, phrase_depths
from .masking import Lexicon, MaskedCorpus, lexicon_to_csv


class LayoutError(ValueError):
    """Content cannot be placed inside the page under the given layout."""


class AlignmentError(ValueError):
    """Coordinate manifest does not match the corpus being overlaid."""


@dataclass(frozen=True)
class SheetLayout:
    page_width: float = 297.0
    page_height: float = 420.0
    margin: float = 15.0
    em: float = 4.2
    char_width_factor: float = 0.6
    superscript_scale: float = 0.6
    line_offset: float = 2.0
    row_gap: float = 6.0
    stroke_width: float = 0.8
    card_size: tuple[float, float] = (60.0, 40.0)
    card_gap: float = 6.0
    colors: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.line_offset <= 0:
            raise LayoutError("line_offset must be positive so deeper lines stack strictly higher")
        if self.margin * 2 >= min(self.page_width, self.page_height):
            raise LayoutError("margins leave no printable area")

    @property
    def char_width(self) -> float:
        return self.em * self.char_width_factor

    @property
    def printable_width(self) -> float:
        return self.page_width - 2 * self.margin

    def resolve(self, color_name: str) -> str:
        return self.colors.get(color_name, color_name)


@dataclass(frozen=True)
class CardSpec:
    face: str
    pos: int | None = None
    loop_marker: bool = False
    size: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.loop_marker == (self.pos is not None):
            raise ValueError("a card carries either a loop marker (bracelet) or a POS footer (grammar)")


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _svg_page(layout: SheetLayout, body: list[str]) -> str:
    w, h = _fmt(layout.page_width), _fmt(layout.page_height)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}mm" height="{h}mm" '
        f'viewBox="0 0 {w} {h}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"

def _text(x: float, y: float, content: str, size: float, fill: str = "black", anchor: str | None = None) -> str:
    extra = f' text-anchor="{anchor}"' if anchor else ""
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
        f'font-size="{_fmt(size)}" fill="{fill}"{extra}>{escape(content)}</text>'
    )

def _line(x1: float, y1: float, x2: float, y2: float, color: str, width: float) -> str:
    return (
        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
        f'stroke="{color}" stroke-width="{_fmt(width)}" stroke-linecap="round"/>'
    )

def _rect(x: float, y: float, w: float, h: float, stroke: str, fill: str = "none") -> str:
    return (
        f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'stroke="{stroke}" stroke-width="0.30" fill="{fill}"/>'
    )

def _circle(cx: float, cy: float, r: float, stroke: str) -> str:
    return f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" stroke="{stroke}" stroke-width="0.30" fill="none"/>'


def _token_width(surface: str, layout: SheetLayout) -> float:
    return len(surface) * layout.char_width + layout.char_width * layout.superscript_scale


@dataclass
class _PlacedToken:
    sentence: int
    token: int
    line: int
    x: float
    width: float


def _flow_sentence(sentence: Sentence, index: int, layout: SheetLayout) -> tuple[list[_PlacedToken], int]:
    """Greedy horizontal flow of one sentence into visual lines."""
    placed: list[_PlacedToken] = []
    x = layout.margin
    line = 0
    gap = layout.char_width
    for j, token in enumerate(sentence.tokens):
        width = _token_width(token.surface, layout)
        if width > layout.printable_width:
            raise LayoutError(
                f"sentence {index} token {j} ({token.surface!r}) is wider than the printable area"
            )
        if x + width > layout.margin + layout.printable_width:
            line += 1
            x = layout.margin
        placed.append(_PlacedToken(sentence=index, token=j, line=line, x=x, width=width))
        x += width + gap
    return placed, line + 1


def emit_corpus_sheets(masked: MaskedCorpus | AnnotatedCorpus, layout: SheetLayout | None = None) -> tuple[list[str], dict[str, Any]]:
    """Render corpus sheets: one row per sentence with POS superscripts and
    nested colored phrase lines; returns (pages, coordinate manifest)."""
    layout = layout or SheetLayout()
    pages: list[list[str]] = []
    manifest_tokens: list[dict[str, Any]] = []
    y = layout.page_height  # force a new page for the first sentence

    for i, sentence in enumerate(masked.sentences):
        depths = phrase_depths(sentence)
        zone = layout.line_offset * (max(depths.values()) + 1) if depths else 0.0
        placed, n_lines = _flow_sentence(sentence, i, layout)
        line_height = zone + layout.em * 1.4
        block = n_lines * line_height + layout.row_gap
        if y + block > layout.page_height - layout.margin:
            if block > layout.page_height - 2 * layout.margin:
                raise LayoutError(f"sentence {i} does not fit on a single page")
            pages.append([])
            y = layout.margin
        page_index = len(pages) - 1
        body = pages[page_index]

        baselines = [y + line * line_height + zone + layout.em for line in range(n_lines)]
        for tok in placed:
            token = sentence.tokens[tok.token]
            baseline = baselines[tok.line]
            body.append(_text(tok.x, baseline, token.surface, layout.em))
            body.append(
                _text(
                    tok.x + len(token.surface) * layout.char_width,
                    baseline - layout.em * 0.45,
                    str(token.pos),
                    layout.em * layout.superscript_scale,
                )
            )
            manifest_tokens.append(
                {
                    "sentence": i,
                    "token": tok.token,
                    "page": page_index,
                    "x": round(tok.x, 2),
                    "y": round(baseline, 2),
                    "width": round(tok.width, 2),
                }
            )
        for span in sentence.phrases:
            color = layout.resolve(masked.palette[span.label])
            depth = depths[span]
            covered = placed[span.start : span.end]
            for line in sorted({t.line for t in covered}):
                run = [t for t in covered if t.line == line]
                line_y = baselines[line] - layout.em - (layout.line_offset * (depth + 1))
                body.append(_line(run[0].x, line_y, run[-1].x + run[-1].width, line_y, color, layout.stroke_width))
        y += block

    manifest = {
        "corpus_id": masked.id,
        "page_width": layout.page_width,
        "page_height": layout.page_height,
        "page_count": len(pages),
        "sentence_count": len(masked.sentences),
        "tokens": manifest_tokens,
    }
    return [_svg_page(layout, body) for body in pages], manifest


def emit_reveal_overlay(corpus: AnnotatedCorpus, manifest: Mapping[str, Any], layout: SheetLayout | None = None) -> list[str]:
    """Transparent pages placing each clear surface at the recorded position
    of its masked counterpart; page i overlays sheets page i exactly."""
    layout = layout or SheetLayout()
    token_counts = [len(s.tokens) for s in corpus.sentences]
    entries = manifest.get("tokens", [])
    expected = sum(token_counts)
    if manifest.get("sentence_count") != len(corpus.sentences) or len(entries) != expected:
        raise AlignmentError(
            f"manifest covers {manifest.get('sentence_count')} sentences / {len(entries)} tokens, "
            f"corpus has {len(corpus.sentences)} / {expected}"
        )
    page_count = manifest.get("page_count", 0)
    pages: list[list[str]] = [[] for _ in range(page_count)]
    for entry in entries:
        i, j = entry["sentence"], entry["token"]
        if not (0 <= i < len(corpus.sentences) and 0 <= j < token_counts[i]):
            raise AlignmentError(f"manifest token ({i},{j}) outside the corpus")
        surface = corpus.sentences[i].tokens[j].surface
        pages[entry["page"]].append(_text(entry["x"], entry["y"], surface, layout.em, fill="firebrick"))
    return [_svg_page(layout, body) for body in pages]


def emit_dictionary(lexicon: Lexicon, corpus: AnnotatedCorpus) -> str:
    """Translation dictionary CSV: mask, surface, attested POS digits."""
    return lexicon_to_csv(lexicon, corpus)


def card_id(index: int, loop_marker: bool) -> str:
    return f"{'b' if loop_marker else 'g'}{index:03d}"


def emit_card_deck(cards: Sequence[CardSpec], layout: SheetLayout | None = None) -> tuple[list[str], list[dict[str, Any]]]:
    """Grid-paginate cards with cut guides; returns (pages, card manifest)."""
    if not cards:
        raise ValueError("deck must not be empty")
    layout = layout or SheetLayout()
    pages: list[list[str]] = []
    manifest: list[dict[str, Any]] = []
    x = layout.page_width  # force first page/row
    y = layout.page_height
    row_height = 0.0
    bracelet_seen = 0
    grammar_seen = 0
    for spec in cards:
        cw, ch = spec.size or layout.card_size
        if cw > layout.printable_width or ch > layout.page_height - 2 * layout.margin:
            raise LayoutError(f"card {spec.face!r} larger than the printable area")
        if x + cw > layout.page_width - layout.margin:
            x = layout.margin
            y += row_height + layout.card_gap
            row_height = 0.0
        if y + ch > layout.page_height - layout.margin:
            pages.append([])
            x = layout.margin
            y = layout.margin
            row_height = 0.0
        body = pages[-1]
        body.append(_rect(x, y, cw, ch, stroke="silver"))
        body.append(_text(x + cw / 2, y + ch / 2 + layout.em / 2, spec.face, layout.em, anchor="middle"))
        if spec.loop_marker:
            body.append(_circle(x + cw / 2, y + 3.0, 1.8, stroke="black"))
            cid = card_id(bracelet_seen, True)
            bracelet_seen += 1
        else:
            body.append(_text(x + cw / 2, y + ch - 2.5, str(spec.pos), layout.em * 0.8, anchor="middle"))
            cid = card_id(grammar_seen, False)
            grammar_seen += 1
        manifest.append(
            {
                "id": cid,
                "face": spec.face,
                "pos": spec.pos,
                "loop_marker": spec.loop_marker,
                "page": len(pages) - 1,
            }
        )
        x += cw + layout.card_gap
        row_height = max(row_height, ch)
    return [_svg_page(layout, body) for body in pages], manifest


def bracelet_cards(masked: MaskedCorpus, duplicate_threshold: int = 3) -> list[CardSpec]:
    """Default bracelet deck: one card per distinct masked surface, with a
    second copy for frequent words so common bigrams stay playable."""
    counts: dict[str, int] = {}
    for sentence in masked.sentences:
        for token in sentence.tokens:
            counts[token.surface] = counts.get(token.surface, 0) + 1
    cards: list[CardSpec] = []
    for surface in sorted(counts):
        cards.append(CardSpec(face=surface, loop_marker=True))
        if counts[surface] >= duplicate_threshold:
            cards.append(CardSpec(face=surface, loop_marker=True))
    return cards


def grammar_cards(masked: MaskedCorpus, extra: Iterable[tuple[str, int]] = ()) -> list[CardSpec]:
    """Default grammar deck: one card per distinct masked (surface, pos)
    pair, plus extra out-of-corpus cards (already masked) with their POS."""
    pairs = {(t.surface, t.pos) for s in masked.sentences for t in s.tokens}
    pairs.update(extra)
    return [CardSpec(face=surface, pos=pos) for surface, pos in sorted(pairs)]


def emit_all(
    corpus: AnnotatedCorpus,
    lexicon: Lexicon,
    out_dir: str | Path,
    layout: SheetLayout | None = None,
    seed: int | None = None,
) -> list[Path]:
    """Write the full artifact tree: sheets/, overlay/, cards/, dictionary.csv
    and manifest.json.  Byte-identical across runs for identical inputs."""
    from .masking import mask_corpus

    layout = layout or SheetLayout()
    out = Path(out_dir)
    masked = mask_corpus(corpus, lexicon)
    sheets, coords = emit_corpus_sheets(masked, layout)
    overlay = emit_reveal_overlay(corpus, coords, layout)
    deck = bracelet_cards(masked) + grammar_cards(masked)
    card_pages, card_manifest = emit_card_deck(deck, layout)
    dictionary = emit_dictionary(lexicon, corpus)

    written: list[Path] = []

    def write(path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        written.append(path)

    for n, page in enumerate(sheets, start=1):
        write(out / "sheets" / f"p{n}.svg", page)
    for n, page in enumerate(overlay, start=1):
        write(out / "overlay" / f"p{n}.svg", page)
    for n, page in enumerate(card_pages, start=1):
        write(out / "cards" / f"p{n}.svg", page)
    write(out / "dictionary.csv", dictionary)
    manifest = {
        "seed": seed if seed is not None else (lexicon.scheme.seed if lexicon.scheme else None),
        "scheme": lexicon.scheme.kind if lexicon.scheme else None,
        "coordinates": coords,
        "cards": card_manifest,
    }
    write(out / "manifest.json", canonical_json(manifest))
    return written
