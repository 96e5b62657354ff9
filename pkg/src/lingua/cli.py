"""Command-line entry point wiring the preparation pipeline end to end.

Every subcommand is a thin adapter over the library: argument parsing,
file I/O, and serialization only.  Exit codes: 0 success, 1 validation
failure, 2 usage error (including missing input files).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bigrams, grammar, masking, materials
from .corpus import (
    CorpusFormatError,
    CorpusValidationError,
    canonical_json,
    corpus_from_dict,
    parse_corpus,
    validate_corpus,
)


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"input file not found: {path}")
    return p.read_text(encoding="utf-8")


def _read_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as err:
        raise UsageError(f"{path}: not valid JSON: {err}") from err


def _load_corpus_arg(path: str, masked: bool = False):
    text = _read_text(path)
    if masked:
        return masking.masked_corpus_from_dict(json.loads(text))
    return parse_corpus(text)


def _load_layout(path: str | None) -> materials.SheetLayout:
    if not path:
        return materials.SheetLayout()
    obj = _read_json(path)
    if "card_size" in obj:
        obj["card_size"] = tuple(obj["card_size"])
    return materials.SheetLayout(**obj)


def _load_scheme(args: argparse.Namespace) -> masking.MaskScheme:
    if getattr(args, "scheme_file", None):
        return masking.scheme_from_dict(_read_json(args.scheme_file))
    kind = getattr(args, "scheme", None) or masking.PSEUDOWORD
    seed = getattr(args, "seed", None)
    seed = 0 if seed is None else seed
    if kind == masking.DING:
        return masking.ding_scheme(seed)
    return masking.pseudoword_scheme(seed)


def _read_deck_surfaces(path: str) -> list[str]:
    rows = list(csv.DictReader(_read_text(path).splitlines()))
    if rows and "surface" in rows[0]:
        return [r["surface"].strip() for r in rows]
    # headerless fallback: one surface per line
    return [line.strip() for line in _read_text(path).splitlines() if line.strip()]


def _read_deck_cards(path: str) -> list[grammar.DeckCard]:
    cards = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        cards.append(
            grammar.DeckCard(
                surface=row["surface"].strip(),
                pos=int(row["pos"]),
                in_corpus=row.get("in_corpus", "").strip().lower() in ("1", "true", "yes"),
            )
        )
    return cards


def _emit_json(obj: Any) -> None:
    sys.stdout.write(canonical_json(obj))


def cmd_validate(args: argparse.Namespace) -> int:
    text = _read_text(args.corpus)
    try:
        parse_corpus(text)
    except CorpusValidationError as err:
        for violation in err.violations:
            print(violation, file=sys.stderr)
        return 1
    except CorpusFormatError as err:
        print(f"format error: {err}", file=sys.stderr)
        return 1
    print(f"{args.corpus}: valid")
    return 0


def cmd_mask(args: argparse.Namespace) -> int:
    corpus = _load_corpus_arg(args.corpus)
    scheme = _load_scheme(args)
    extra = _read_deck_surfaces(args.extra_words) if args.extra_words else []
    blocklist = (
        [w.strip() for w in _read_text(args.blocklist).splitlines() if w.strip()] if args.blocklist else []
    )
    lexicon = masking.build_lexicon(corpus, scheme, extra_words=extra, blocklist=blocklist)
    masked = masking.mask_corpus(corpus, lexicon)
    if args.out_corpus:
        Path(args.out_corpus).write_text(
            canonical_json(masking.masked_corpus_to_dict(masked)), encoding="utf-8"
        )
    if args.out_dictionary:
        Path(args.out_dictionary).write_text(masking.lexicon_to_csv(lexicon, corpus), encoding="utf-8")
    return 0


def cmd_bigrams_build(args: argparse.Namespace) -> int:
    corpus = _load_corpus_arg(args.corpus, masked=args.masked)
    model = bigrams.build_bigram_model(corpus)
    Path(args.out).write_text(canonical_json(bigrams.model_to_dict(model)), encoding="utf-8")
    return 0


def _load_model(path: str) -> bigrams.BigramModel:
    return bigrams.model_from_dict(_read_json(path))


def cmd_bigrams_enumerate(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    deck = _read_deck_surfaces(args.deck)
    chains = bigrams.enumerate_sentences(model, deck, args.min, args.max, limit=args.limit)
    if args.format == "json":
        _emit_json([list(chain) for chain in chains])
    else:
        for chain in chains:
            print(" ".join(chain))
    return 0


def cmd_order(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    salad = [w.strip() for w in args.salad.split(",") if w.strip()]
    ranked = bigrams.order_tokens(model, salad, mode=args.mode, limit=args.limit)
    if args.format == "json":
        _emit_json([{"words": list(r.words), "score": r.score} for r in ranked])
    else:
        for r in ranked:
            print(f"{' '.join(r.words)}\t{r.score:.4f}")
    return 0


def cmd_grammar_extract(args: argparse.Namespace) -> int:
    corpus = _load_corpus_arg(args.corpus)
    ruleset = grammar.extract_rules(corpus)
    Path(args.out).write_text(canonical_json(grammar.rules_to_list(ruleset)), encoding="utf-8")
    return 0


def _load_rules(path: str) -> grammar.RuleSet:
    return grammar.rules_from_list(_read_json(path))


def cmd_grammar_derive(args: argparse.Namespace) -> int:
    ruleset = _load_rules(args.rules)
    deck = _read_deck_cards(args.deck)
    outputs = grammar.derive_sentences(ruleset, deck, max_depth=args.max_depth, limit=args.limit)
    if args.format == "json":
        _emit_json([list(words) for words, _tree in outputs])
    else:
        for words, _tree in outputs:
            print(" ".join(words))
    return 0


def cmd_grammar_check(args: argparse.Namespace) -> int:
    ruleset = _load_rules(args.rules)
    candidate = grammar.Rule(lhs=args.lhs, rhs=tuple(args.rhs.split()))
    try:
        verdict = grammar.check_rule(ruleset, candidate)
    except ValueError as err:
        raise UsageError(str(err)) from err
    if args.format == "json":
        _emit_json({"accepted": verdict.accepted, "reason": verdict.reason})
    else:
        print("accepted" if verdict.accepted else f"rejected: {verdict.reason}")
    return 0 if verdict.accepted else 1


def cmd_emit(args: argparse.Namespace) -> int:
    corpus = _load_corpus_arg(args.corpus)
    layout = _load_layout(args.layout)
    if args.lexicon:
        lexicon = masking.lexicon_from_csv(_read_text(args.lexicon))
    else:
        lexicon = masking.build_lexicon(corpus, _load_scheme(args))
    out = Path(args.out)
    target = args.what
    if target == "all":
        materials.emit_all(corpus, lexicon, out, layout, seed=getattr(args, "seed", None))
        return 0
    masked = masking.mask_corpus(corpus, lexicon)
    out.mkdir(parents=True, exist_ok=True)
    if target == "dictionary":
        (out / "dictionary.csv").write_text(materials.emit_dictionary(lexicon, corpus), encoding="utf-8")
        return 0
    sheets, manifest = materials.emit_corpus_sheets(masked, layout)
    if target == "sheets":
        for n, page in enumerate(sheets, start=1):
            (out / "sheets").mkdir(parents=True, exist_ok=True)
            (out / "sheets" / f"p{n}.svg").write_text(page, encoding="utf-8")
        (out / "manifest.json").write_text(canonical_json({"coordinates": manifest}), encoding="utf-8")
        return 0
    if target == "overlay":
        overlay = materials.emit_reveal_overlay(corpus, manifest, layout)
        (out / "overlay").mkdir(parents=True, exist_ok=True)
        for n, page in enumerate(overlay, start=1):
            (out / "overlay" / f"p{n}.svg").write_text(page, encoding="utf-8")
        return 0
    if target == "cards":
        deck = materials.bracelet_cards(masked) + materials.grammar_cards(masked)
        pages, card_manifest = materials.emit_card_deck(deck, layout)
        (out / "cards").mkdir(parents=True, exist_ok=True)
        for n, page in enumerate(pages, start=1):
            (out / "cards" / f"p{n}.svg").write_text(page, encoding="utf-8")
        (out / "cards" / "manifest.json").write_text(canonical_json({"cards": card_manifest}), encoding="utf-8")
        return 0
    raise UsageError(f"unknown emit target {target!r}")


def cmd_serve(args: argparse.Namespace) -> int:
    import os

    import uvicorn

    from .service import ServiceConfig, create_app

    env = os.environ.get
    registry = args.registry or env("LINGUA_REGISTRY")
    sessions = args.sessions or env("LINGUA_SESSIONS")
    if not registry or not sessions:
        raise UsageError("serve needs --registry and --sessions (or LINGUA_REGISTRY/LINGUA_SESSIONS)")
    config = ServiceConfig(
        registry_dir=registry,
        session_dir=sessions,
        scheme=_load_scheme(args),
        facilitator_token=args.facilitator_token or env("LINGUA_FACILITATOR_TOKEN"),
        static_dir=args.static or env("LINGUA_STATIC"),
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host or env("LINGUA_HOST", "127.0.0.1"), port=args.port or int(env("LINGUA_PORT", "8000")))
    return 0


def _add_scheme_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", choices=[masking.DING, masking.PSEUDOWORD], default=None)
    parser.add_argument("--scheme-file", default=None, help="JSON scheme configuration")
    parser.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lingua", description=__doc__)
    parser.add_argument("--config", default=None, help="JSON config file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a corpus file")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mask", help="build a lexicon and mask a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-corpus", default=None)
    p.add_argument("--out-dictionary", default=None)
    p.add_argument("--extra-words", default=None, help="CSV of out-of-corpus deck words")
    p.add_argument("--blocklist", default=None, help="newline wordlist masks must avoid")
    _add_scheme_flags(p)
    p.set_defaults(func=cmd_mask)

    big = sub.add_parser("bigrams", help="bigram model commands").add_subparsers(
        dest="subcommand", required=True
    )
    p = big.add_parser("build")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--masked", action="store_true", help="input corpus is already masked")
    p.set_defaults(func=cmd_bigrams_build)
    p = big.add_parser("enumerate")
    p.add_argument("--model", required=True)
    p.add_argument("--deck", required=True)
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bigrams_enumerate)

    def add_order(parent):
        p = parent.add_parser("order", help="solve a word salad")
        p.add_argument("--model", required=True)
        p.add_argument("--salad", required=True, help="comma-separated words")
        p.add_argument("--mode", choices=[bigrams.STRICT, bigrams.SMOOTHED], default=bigrams.SMOOTHED)
        p.add_argument("--limit", type=int, default=10)
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.set_defaults(func=cmd_order)

    add_order(big)
    add_order(sub)  # `lingua order` shorthand

    gram = sub.add_parser("grammar", help="grammar commands").add_subparsers(
        dest="subcommand", required=True
    )
    p = gram.add_parser("extract")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grammar_extract)
    p = gram.add_parser("derive")
    p.add_argument("--rules", required=True)
    p.add_argument("--deck", required=True)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_grammar_derive)
    p = gram.add_parser("check")
    p.add_argument("--rules", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True, help="space-separated symbols, e.g. '0 1' or '5 NP'")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_grammar_check)

    p = sub.add_parser("emit", help="emit printable materials")
    p.add_argument("what", choices=["all", "sheets", "cards", "dictionary", "overlay"])
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", default=None, help="dictionary CSV from a previous mask run")
    p.add_argument("--layout", default=None, help="JSON layout file")
    p.add_argument("--out", required=True)
    _add_scheme_flags(p)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("serve", help="run the game service")
    p.add_argument("--registry", default=None, help="directory of corpus files (env LINGUA_REGISTRY)")
    p.add_argument("--sessions", default=None, help="directory for session event logs (env LINGUA_SESSIONS)")
    p.add_argument("--host", default=None, help="listen address (env LINGUA_HOST)")
    p.add_argument("--port", type=int, default=None, help="listen port (env LINGUA_PORT)")
    p.add_argument("--facilitator-token", default=None, help="override token (env LINGUA_FACILITATOR_TOKEN)")
    p.add_argument("--static", default=None, help="directory of web client assets (env LINGUA_STATIC)")
    _add_scheme_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    overrides = _read_json(args.config)
    if not isinstance(overrides, dict):
        raise UsageError(f"{args.config}: config must be a JSON object")
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CorpusValidationError as err:
        for violation in err.violations:
            print(violation, file=sys.stderr)
        return 1
    except (CorpusFormatError, masking.MaskCapacityError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
