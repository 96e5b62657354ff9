"""Annotated-corpus data model, interchange format, and structural validation.

A corpus is a list of sentences; each sentence is a list of lowercase
tokens carrying a single-digit part-of-speech code, plus a set of labeled
phrase spans that must nest cleanly.  Everything else in the toolkit
consumes these types.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

SURFACE_RE = re.compile(r"[a-zà-ÿ']+\Z")

POS_MIN = 0
POS_MAX = 9


class CorpusFormatError(ValueError):
    """Document is not a well-formed corpus file (syntax or shape)."""


class CorpusValidationError(ValueError):
    """Document parsed but violates corpus invariants."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    sentence: int | None
    kind: str
    message: str

    def __str__(self) -> str:
        where = "corpus" if self.sentence is None else f"sentence {self.sentence}"
        return f"{where}: {self.kind}: {self.message}"


@dataclass(frozen=True)
class Token:
    surface: str
    pos: int


@dataclass(frozen=True)
class PhraseSpan:
    """Half-open token range [start, end) labeled with a phrase category."""

    start: int
    end: int
    label: str


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    phrases: tuple[PhraseSpan, ...]

    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    def pos_digits(self) -> tuple[int, ...]:
        return tuple(t.pos for t in self.tokens)


@dataclass(frozen=True)
class AnnotatedCorpus:
    id: str
    hidden_language: str
    sentences: tuple[Sentence, ...]
    pos_legend: Mapping[int, str]
    palette: Mapping[str, str]


@dataclass(frozen=True)
class Vocabulary:
    """Distinct (surface, pos) pairs and distinct surfaces, both sorted."""

    pairs: tuple[tuple[str, int], ...]
    surfaces: tuple[str, ...]


def spans_cross(a: PhraseSpan, b: PhraseSpan) -> bool:
    """True when the two spans overlap without one containing the other."""
    lo, hi = (a, b) if (a.start, a.end) <= (b.start, b.end) else (b, a)
    return lo.start < hi.start < lo.end < hi.end


def validate_corpus(corpus: AnnotatedCorpus) -> list[Violation]:
    """Check every type invariant; an empty list means the corpus is valid."""
    out: list[Violation] = []
    if not corpus.sentences:
        out.append(Violation(None, "empty-corpus", "corpus has no sentences"))
    for i, sent in enumerate(corpus.sentences):
        if not sent.tokens:
            out.append(Violation(i, "empty-sentence", "sentence has no tokens"))
        for j, tok in enumerate(sent.tokens):
            if not SURFACE_RE.match(tok.surface):
                out.append(
                    Violation(i, "bad-surface", f"token {j} surface {tok.surface!r} is not a lowercase word")
                )
            if not POS_MIN <= tok.pos <= POS_MAX:
                out.append(Violation(i, "pos-range", f"token {j} pos {tok.pos} out of range 0..9"))
            elif tok.pos not in corpus.pos_legend:
                out.append(Violation(i, "unknown-pos", f"pos digit {tok.pos} missing from pos_legend"))
        n = len(sent.tokens)
        seen: set[tuple[int, int]] = set()
        for span in sent.phrases:
            if not (0 <= span.start < span.end <= n):
                out.append(
                    Violation(i, "span-bounds", f"span {span.label} ({span.start},{span.end}) outside 0..{n}")
                )
                continue
            if (span.start, span.end) in seen:
                out.append(
                    Violation(i, "span-duplicate", f"two spans share extent ({span.start},{span.end})")
                )
            seen.add((span.start, span.end))
            if span.label not in corpus.palette:
                out.append(Violation(i, "unknown-label", f"phrase label {span.label!r} missing from palette"))
        bounded = [s for s in sent.phrases if 0 <= s.start < s.end <= n]
        for a in range(len(bounded)):
            for b in range(a + 1, len(bounded)):
                if spans_cross(bounded[a], bounded[b]):
                    out.append(
                        Violation(
                            i,
                            "span-crossing",
                            f"spans {bounded[a].label} ({bounded[a].start},{bounded[a].end}) and "
                            f"{bounded[b].label} ({bounded[b].start},{bounded[b].end}) cross",
                        )
                    )
    return out


def vocabulary(corpus: AnnotatedCorpus) -> Vocabulary:
    pairs = {(t.surface, t.pos) for s in corpus.sentences for t in s.tokens}
    surfaces = {p[0] for p in pairs}
    return Vocabulary(pairs=tuple(sorted(pairs)), surfaces=tuple(sorted(surfaces)))


def _require(obj: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in obj:
        raise CorpusFormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise CorpusFormatError(f"{where}: key {key!r} must be {kind.__name__}")
    return value


def _sentence_from_dict(obj: Any, index: int, lowercase: bool) -> Sentence:
    where = f"sentence {index}"
    if not isinstance(obj, dict):
        raise CorpusFormatError(f"{where}: must be an object")
    tokens = []
    for j, tok in enumerate(_require(obj, "tokens", list, where)):
        if not isinstance(tok, dict):
            raise CorpusFormatError(f"{where}: token {j} must be an object")
        surface = _require(tok, "surface", str, f"{where} token {j}")
        pos = _require(tok, "pos", int, f"{where} token {j}")
        tokens.append(Token(surface.lower() if lowercase else surface, pos))
    phrases = []
    for j, span in enumerate(obj.get("phrases", [])):
        if not isinstance(span, dict):
            raise CorpusFormatError(f"{where}: phrase {j} must be an object")
        phrases.append(
            PhraseSpan(
                start=_require(span, "start", int, f"{where} phrase {j}"),
                end=_require(span, "end", int, f"{where} phrase {j}"),
                label=_require(span, "label", str, f"{where} phrase {j}"),
            )
        )
    return Sentence(tokens=tuple(tokens), phrases=tuple(phrases))


def corpus_from_dict(obj: Any, lowercase: bool = True) -> AnnotatedCorpus:
    """Build a corpus value from decoded JSON, checking shape but not invariants."""
    if not isinstance(obj, dict):
        raise CorpusFormatError("corpus document must be a JSON object")
    legend_raw = _require(obj, "pos_legend", dict, "corpus")
    legend: dict[int, str] = {}
    for key, name in legend_raw.items():
        if not isinstance(key, str) or not key.isdigit():
            raise CorpusFormatError(f"pos_legend key {key!r} must be a digit string")
        if not isinstance(name, str):
            raise CorpusFormatError(f"pos_legend value for {key!r} must be a string")
        legend[int(key)] = name
    palette_raw = _require(obj, "palette", dict, "corpus")
    for key, value in palette_raw.items():
        if not isinstance(key, str) or not isinstance(value, str):
            raise CorpusFormatError("palette must map label strings to color strings")
    sentences = tuple(
        _sentence_from_dict(s, i, lowercase)
        for i, s in enumerate(_require(obj, "sentences", list, "corpus"))
    )
    return AnnotatedCorpus(
        id=_require(obj, "id", str, "corpus"),
        hidden_language=_require(obj, "hidden_language", str, "corpus"),
        sentences=sentences,
        pos_legend=legend,
        palette=dict(palette_raw),
    )


def parse_corpus(document: bytes | str) -> AnnotatedCorpus:
    """Parse and validate a corpus interchange document.

    Raises CorpusFormatError on malformed syntax or shape (with line/column
    for JSON syntax errors) and CorpusValidationError when any invariant
    fails.
    """
    text = document.decode("utf-8") if isinstance(document, bytes) else document
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise CorpusFormatError(f"line {err.lineno} column {err.colno}: {err.msg}") from err
    corpus = corpus_from_dict(obj)
    violations = validate_corpus(corpus)
    if violations:
        raise CorpusValidationError(violations)
    return corpus


def corpus_to_dict(corpus: AnnotatedCorpus) -> dict[str, Any]:
    return {
        "id": corpus.id,
        "hidden_language": corpus.hidden_language,
        "pos_legend": {str(k): v for k, v in corpus.pos_legend.items()},
        "palette": dict(corpus.palette),
        "sentences": [
            {
                "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
                "phrases": [
                    {"start": p.start, "end": p.end, "label": p.label} for p in s.phrases
                ],
            }
            for s in corpus.sentences
        ],
    }


def canonical_json(obj: Any) -> str:
    """Canonical serialization used by every artifact: sorted keys, 2-space
    indent, trailing newline.  Byte-stable for golden tests."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_corpus(corpus: AnnotatedCorpus) -> str:
    return canonical_json(corpus_to_dict(corpus))


def phrase_depths(sentence: Sentence) -> dict[PhraseSpan, int]:
    """Nesting depth per span: number of spans properly containing it."""
    depths: dict[PhraseSpan, int] = {}
    for span in sentence.phrases:
        depth = sum(
            1
            for other in sentence.phrases
            if other != span
            and other.start <= span.start
            and span.end <= other.end
            and (other.start, other.end) != (span.start, span.end)
        )
        depths[span] = depth
    return depths


def load_corpus(path: str) -> AnnotatedCorpus:
    with open(path, "rb") as fh:
        return parse_corpus(fh.read())


def iter_surfaces(sentences: Iterable[Sentence]) -> Iterable[str]:
    for sentence in sentences:
        for token in sentence.tokens:
            yield token.surface
