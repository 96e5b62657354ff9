"""Word-to-mask lexicon construction, corpus masking, and the reveal.

Two mask schemes are supported: glyph strings drawn from a dingbat
alphabet, and pronounceable pseudowords assembled from syllables.  Mask
assignment is a pure function of (vocabulary, scheme, seed); collisions
are resolved by deterministic re-draws and, as a last resort, by
escalating mask length.
"""

from __future__ import annotations

import csv
import hashlib
import io
import random
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .corpus import AnnotatedCorpus, Sentence, Token, vocabulary

DING = "ding"
PSEUDOWORD = "pseudoword"

DEFAULT_GLYPHS = tuple("✙✚✛✜✢✣✤✥✦✧✩✪✫✬✭✮✯✰✱✲")
DEFAULT_ONSETS = tuple(
    "b c d f g l m n p r s t v z bl br cl cr dr fl fr gl gr pl pr st tr".split()
)
DEFAULT_NUCLEI = tuple("a e i o u".split())
DEFAULT_CODAS = ("", "l", "m", "n", "r", "s", "t")

_RETRIES_PER_LEVEL = 16
_MAX_ESCALATION = 8


class MaskSchemeError(ValueError):
    """Scheme parameters violate the scheme invariants."""


class MaskCapacityError(RuntimeError):
    """Alphabet or syllable inventory cannot host the vocabulary injectively."""


class CoverageError(KeyError):
    """A surface to be masked is missing from the lexicon."""


class RevealError(KeyError):
    """A mask to be revealed is missing from the reverse map."""


@dataclass(frozen=True)
class MaskScheme:
    kind: str
    seed: int
    glyph_alphabet: tuple[str, ...] = DEFAULT_GLYPHS
    length_range: tuple[int, int] = (3, 6)
    onsets: tuple[str, ...] = DEFAULT_ONSETS
    nuclei: tuple[str, ...] = DEFAULT_NUCLEI
    codas: tuple[str, ...] = DEFAULT_CODAS

    def __post_init__(self) -> None:
        if self.kind not in (DING, PSEUDOWORD):
            raise MaskSchemeError(f"unknown scheme kind {self.kind!r}")
        lo, hi = self.length_range
        if not 1 <= lo <= hi:
            raise MaskSchemeError(f"bad length range {self.length_range}")
        if self.kind == DING and len(set(self.glyph_alphabet)) < 10:
            raise MaskSchemeError("ding scheme needs at least 10 distinct glyphs")
        if self.kind == PSEUDOWORD and not (self.onsets and self.nuclei and self.codas):
            raise MaskSchemeError("pseudoword scheme needs onsets, nuclei and codas")


def ding_scheme(seed: int, glyphs: Iterable[str] = DEFAULT_GLYPHS, length_range: tuple[int, int] = (3, 6)) -> MaskScheme:
    return MaskScheme(kind=DING, seed=seed, glyph_alphabet=tuple(glyphs), length_range=length_range)


def pseudoword_scheme(
    seed: int,
    onsets: Iterable[str] = DEFAULT_ONSETS,
    nuclei: Iterable[str] = DEFAULT_NUCLEI,
    codas: Iterable[str] = DEFAULT_CODAS,
) -> MaskScheme:
    return MaskScheme(
        kind=PSEUDOWORD,
        seed=seed,
        onsets=tuple(onsets),
        nuclei=tuple(nuclei),
        codas=tuple(codas),
    )


def scheme_to_dict(scheme: MaskScheme) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": scheme.kind, "seed": scheme.seed}
    if scheme.kind == DING:
        out["glyph_alphabet"] = "".join(scheme.glyph_alphabet)
        out["length_range"] = list(scheme.length_range)
    else:
        out["onsets"] = list(scheme.onsets)
        out["nuclei"] = list(scheme.nuclei)
        out["codas"] = list(scheme.codas)
    return out


def scheme_from_dict(obj: Mapping[str, Any]) -> MaskScheme:
    kind = obj.get("kind", PSEUDOWORD)
    seed = int(obj.get("seed", 0))
    if kind == DING:
        lo, hi = obj.get("length_range", (3, 6))
        return ding_scheme(seed, tuple(obj.get("glyph_alphabet", DEFAULT_GLYPHS)), (int(lo), int(hi)))
    return pseudoword_scheme(
        seed,
        tuple(obj.get("onsets", DEFAULT_ONSETS)),
        tuple(obj.get("nuclei", DEFAULT_NUCLEI)),
        tuple(obj.get("codas", DEFAULT_CODAS)),
    )


@dataclass(frozen=True)
class Lexicon:
    forward: Mapping[str, str]
    reverse: Mapping[str, str]
    scheme: MaskScheme | None = None

    def mask_of(self, surface: str) -> str:
        try:
            return self.forward[surface]
        except KeyError:
            raise CoverageError(f"surface {surface!r} not covered by the lexicon") from None

    def surface_of(self, mask: str) -> str:
        try:
            return self.reverse[mask]
        except KeyError:
            raise RevealError(f"mask {mask!r} unknown to the lexicon") from None


@dataclass(frozen=True)
class MaskedCorpus:
    """Structure-preserving masked view of a corpus.

    Keeps all metadata (including hidden_language) because it is a
    server-side artifact; the game service is responsible for withholding
    the reveal fields from clients.
    """

    id: str
    hidden_language: str
    sentences: tuple[Sentence, ...]
    pos_legend: Mapping[int, str]
    palette: Mapping[str, str]


def _word_rng(seed: int, word: str, attempt: int) -> random.Random:
    key = seed.to_bytes(8, "little", signed=False)
    digest = hashlib.blake2b(f"{word}\x00{attempt}".encode("utf-8"), key=key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "little"))


def _draw_mask(scheme: MaskScheme, word: str, attempt: int) -> str:
    escalation = attempt // _RETRIES_PER_LEVEL
    rng = _word_rng(scheme.seed, word, attempt)
    if scheme.kind == DING:
        lo, hi = scheme.length_range
        length = rng.randint(lo, hi + escalation)
        return "".join(rng.choice(scheme.glyph_alphabet) for _ in range(length))
    syllables = rng.randint(2, 3 + escalation)
    parts = [rng.choice(scheme.onsets) + rng.choice(scheme.nuclei) for _ in range(syllables)]
    return "".join(parts) + rng.choice(scheme.codas)


def build_lexicon(
    corpus: AnnotatedCorpus,
    scheme: MaskScheme,
    extra_words: Iterable[str] = (),
    blocklist: Iterable[str] = (),
) -> Lexicon:
    """Assign an injective mask to every corpus surface plus extra deck words.

    No mask may equal any protected word (corpus vocabulary, extra words,
    or the caller's blocklist, e.g. the other team's vocabulary).
    Identical inputs and seed yield an identical lexicon.
    """
    words = sorted(set(vocabulary(corpus).surfaces) | {w.lower() for w in extra_words})
    return build_masks(words, scheme, blocklist)


def build_masks(words: Iterable[str], scheme: MaskScheme, blocklist: Iterable[str] = ()) -> Lexicon:
    ordered = sorted(set(words))
    protected = set(ordered) | set(blocklist)
    forward: dict[str, str] = {}
    used: set[str] = set()
    budget = _RETRIES_PER_LEVEL * (_MAX_ESCALATION + 1)
    for word in ordered:
        for attempt in range(budget):
            candidate = _draw_mask(scheme, word, attempt)
            if candidate not in used and candidate not in protected:
                forward[word] = candidate
                used.add(candidate)
                break
        else:
            raise MaskCapacityError(
                f"could not find a free mask for {word!r} after {budget} attempts; "
                "enlarge the alphabet or length range"
            )
    reverse = {mask: word for word, mask in forward.items()}
    return Lexicon(forward=forward, reverse=reverse, scheme=scheme)


def mask_corpus(corpus: AnnotatedCorpus, lexicon: Lexicon) -> MaskedCorpus:
    """Replace every surface by its mask; sentence structure, POS digits and
    phrase spans are preserved exactly."""
    sentences = []
    for sent in corpus.sentences:
        tokens = tuple(Token(lexicon.mask_of(t.surface), t.pos) for t in sent.tokens)
        sentences.append(Sentence(tokens=tokens, phrases=sent.phrases))
    return MaskedCorpus(
        id=corpus.id,
        hidden_language=corpus.hidden_language,
        sentences=tuple(sentences),
        pos_legend=dict(corpus.pos_legend),
        palette=dict(corpus.palette),
    )


def reveal(masked: MaskedCorpus | Iterable[str], lexicon: Lexicon) -> AnnotatedCorpus | str:
    """Digital plexiglass: restore clear text from masks.

    A MaskedCorpus comes back as the original AnnotatedCorpus; a sequence
    of mask strings comes back as space-joined clear text.
    """
    if isinstance(masked, MaskedCorpus):
        sentences = []
        for sent in masked.sentences:
            tokens = tuple(Token(lexicon.surface_of(t.surface), t.pos) for t in sent.tokens)
            sentences.append(Sentence(tokens=tokens, phrases=sent.phrases))
        return AnnotatedCorpus(
            id=masked.id,
            hidden_language=masked.hidden_language,
            sentences=tuple(sentences),
            pos_legend=dict(masked.pos_legend),
            palette=dict(masked.palette),
        )
    return " ".join(lexicon.surface_of(mask) for mask in masked)


def masked_corpus_to_dict(masked: MaskedCorpus) -> dict[str, Any]:
    return {
        "id": masked.id,
        "hidden_language": masked.hidden_language,
        "pos_legend": {str(k): v for k, v in masked.pos_legend.items()},
        "palette": dict(masked.palette),
        "sentences": [
            {
                "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
                "phrases": [
                    {"start": p.start, "end": p.end, "label": p.label} for p in s.phrases
                ],
            }
            for s in masked.sentences
        ],
    }


def masked_corpus_from_dict(obj: Mapping[str, Any]) -> MaskedCorpus:
    from .corpus import corpus_from_dict

    plain = corpus_from_dict(dict(obj), lowercase=False)
    return MaskedCorpus(
        id=plain.id,
        hidden_language=plain.hidden_language,
        sentences=plain.sentences,
        pos_legend=plain.pos_legend,
        palette=plain.palette,
    )


def lexicon_to_csv(lexicon: Lexicon, corpus: AnnotatedCorpus | None = None) -> str:
    """Dictionary export: one row per mask with the surface and the sorted
    distinct POS digits attested for it (empty for out-of-corpus words)."""
    pos_by_surface: dict[str, set[int]] = {}
    if corpus is not None:
        for surface, pos in vocabulary(corpus).pairs:
            pos_by_surface.setdefault(surface, set()).add(pos)
            if surface not in lexicon.forward:
                raise CoverageError(f"surface {surface!r} not covered by the lexicon")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["mask", "surface", "pos_digits"])
    for mask in sorted(lexicon.reverse):
        surface = lexicon.reverse[mask]
        digits = "".join(str(d) for d in sorted(pos_by_surface.get(surface, ())))
        writer.writerow([mask, surface, digits])
    return buf.getvalue()


def lexicon_from_csv(text: str) -> Lexicon:
    """Rebuild the forward/reverse maps from a dictionary CSV export."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or header[:2] != ["mask", "surface"]:
        raise ValueError("dictionary CSV must start with a mask,surface,pos_digits header")
    forward: dict[str, str] = {}
    reverse: dict[str, str] = {}
    for row in reader:
        if not row:
            continue
        mask, surface = row[0], row[1]
        forward[surface] = mask
        reverse[mask] = surface
    return Lexicon(forward=forward, reverse=reverse, scheme=None)
