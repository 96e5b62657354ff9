#!/usr/bin/env python3
"""Regenerate the corpus fixtures shipped under src/lingua/fixtures/.

Sentences are written here in a compact bracketed notation
("(PP on/5 (NP a/0 snowy/3 day/1))") and converted to the canonical
corpus interchange format.  Run from the repository root:

    python tools/make_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from lingua.corpus import canonical_json, corpus_to_dict, parse_corpus  # noqa: E402

POS_LEGEND = {
    "0": "DET",
    "1": "NOUN",
    "2": "VERB",
    "3": "ADJ",
    "4": "ADV",
    "5": "PREP",
    "6": "PRON",
    "7": "CONJ",
    "8": "AUX",
    "9": "PRT",
}

PALETTE = {"NP": "crimson", "VP": "navy", "PP": "olive"}

SNOW_WHITE = [
    "(PP on/5 (NP a/0 snowy/3 day/1)) (NP a/0 queen/1) (VP was/8 sewing/2) (PP by/5 (NP her/0 window/1))",
    "(NP the/0 queen/1) (VP pricked/2) (NP her/0 finger/1) (PP with/5 (NP a/0 needle/1))",
    "(NP three/3 drops/1 (PP of/5 (NP blood/1))) (VP fell/2) (PP on/5 (NP the/0 snow/1))",
    "(NP the/0 queen/1) (VP wished/2) (PP for/5 (NP a/0 child/1)) (PP with/5 (NP skin/1)) (PP like/5 (NP snow/1))",
    "soon/4 (NP the/0 queen/1) (VP had/2) (NP a/0 little/3 daughter/1)",
    "(NP they/6) (VP called/2) (NP the/0 little/3 girl/1) (NP snow/1 white/1)",
    "(NP the/0 good/3 queen/1) (VP died/2) (PP in/5 (NP the/0 winter/1))",
    "(NP the/0 king/1) (VP married/2) (NP a/0 new/3 queen/1)",
    "(NP the/0 new/3 queen/1) (VP was/8) very/4 proud/3",
    "(NP she/6) (VP had/2) (NP a/0 magic/3 mirror/1) (PP on/5 (NP the/0 wall/1))",
    "(NP every/0 morning/1) (NP she/6) (VP asked/2) (NP the/0 mirror/1) (NP a/0 question/1)",
    "(NP mirror/1 mirror/1 (PP on/5 (NP the/0 wall/1))) (NP who/6) (VP is/8) (NP the/0 fairest/3 (PP of/5 (NP all/6)))",
    "(NP the/0 mirror/1) (VP always/4 spoke/2) (NP the/0 truth/1)",
    "(NP you/6) (VP are/8) (NP the/0 fairest/3) (PP in/5 (NP the/0 land/1))",
    "(NP snow/1 white/1) (VP grew/2) (PP into/5 (NP a/0 lovely/3 girl/1))",
    "(NP one/3 day/1) (NP the/0 mirror/1) (VP gave/2) (NP a/0 new/3 answer/1)",
    "(NP snow/1 white/1) (VP is/8) (NP the/0 fairest/3 (PP of/5 (NP all/6)))",
    "(NP the/0 queen/1) (VP turned/2) green/3 (PP with/5 (NP envy/1))",
    "(NP she/6) (VP called/2) (NP a/0 huntsman/1) (PP to/5 (NP the/0 castle/1))",
    "(VP take/2) (NP the/0 girl/1) (PP into/5 (NP the/0 forest/1)) and/7 (VP kill/2) (NP her/6)",
    "(NP the/0 huntsman/1) (VP led/2) (NP snow/1 white/1) (PP into/5 (NP the/0 woods/1))",
    "(NP he/6) (VP could/8 not/9 harm/2) (NP the/0 gentle/3 girl/1)",
    "(VP run/2 away/4) and/7 (VP never/4 come/2 back/4)",
    "(NP the/0 kind/3 huntsman/1) (VP let/2) (NP her/6) (VP go/2)",
    "(NP snow/1 white/1) (VP ran/2) (PP through/5 (NP the/0 dark/3 forest/1))",
    "(PP at/5 (NP last/1)) (NP she/6) (VP found/2) (NP a/0 tiny/3 cottage/1)",
    "(NP seven/3 little/3 dwarfs/1) (VP lived/2) (PP in/5 (NP the/0 cottage/1))",
    "(NP the/0 girl/1) (VP ate/2) (NP a/0 little/3 bread/1) and/7 (VP slept/2) (PP in/5 (NP a/0 small/3 bed/1))",
    "(NP the/0 dwarfs/1) (VP found/2) (NP her/6) (PP in/5 (NP the/0 evening/1))",
    "(NP she/6) (VP told/2) (NP them/6) (NP her/0 sad/3 story/1)",
    "(NP the/0 dwarfs/1) (VP asked/2) (NP her/6) (VP to/9 stay/2)",
    "(NP snow/1 white/1) (VP kept/2) (NP the/0 house/1) (PP for/5 (NP them/6))",
    "(NP the/0 dwarfs/1) (VP dug/2) (PP for/5 (NP gold/1)) (PP in/5 (NP the/0 mountain/1))",
    "meanwhile/4 (NP the/0 queen/1) (VP spoke/2) (PP to/5 (NP her/0 mirror/1))",
    "(NP the/0 mirror/1) (VP said/2) (NP snow/1 white/1) (VP still/4 lives/2)",
    "(NP the/0 angry/3 queen/1) (VP made/2) (NP a/0 poisoned/3 comb/1)",
    "(NP she/6) (VP dressed/2) (PP as/5 (NP an/0 old/3 peddler/1))",
    "(NP the/0 queen/1) (VP walked/2) (PP to/5 (NP the/0 cottage/1))",
    "(NP she/6) (VP sold/2) (NP the/0 comb/1) (PP to/5 (NP snow/1 white/1))",
    "(NP the/0 comb/1) (VP made/2) (NP the/0 girl/1) (VP fall/2 down/4)",
    "(NP the/0 dwarfs/1) (VP came/2 home/4) and/7 (VP saved/2) (NP her/6)",
    "(NP the/0 mirror/1) (VP told/2) (NP the/0 truth/1) again/4",
    "(NP the/0 queen/1) (VP cooked/2) (NP a/0 poisoned/3 apple/1) (PP in/5 (NP her/0 secret/3 room/1))",
    "(NP she/6) (VP went/2 back/4) (PP to/5 (NP the/0 cottage/1)) (PP with/5 (NP the/0 apple/1))",
    "(NP snow/1 white/1) (VP took/2) (NP a/0 bite/1 (PP of/5 (NP the/0 apple/1)))",
    "(NP the/0 poor/3 girl/1) (VP fell/2) (PP to/5 (NP the/0 floor/1))",
    "(NP the/0 dwarfs/1) (VP could/8 not/9 wake/2) (NP her/6)",
    "(NP they/6) (VP made/2) (NP a/0 coffin/1 (PP of/5 (NP glass/1))) (PP for/5 (NP her/6))",
    "(NP the/0 coffin/1) (VP stood/2) (PP on/5 (NP the/0 hill/1))",
    "(NP a/0 young/3 prince/1) (VP rode/2) (PP through/5 (NP the/0 forest/1))",
    "(NP he/6) (VP saw/2) (NP the/0 lovely/3 girl/1) (PP in/5 (NP the/0 coffin/1))",
    "(NP the/0 prince/1) (VP begged/2) (NP the/0 dwarfs/1) (PP for/5 (NP the/0 coffin/1))",
    "(NP his/0 servants/1) (VP carried/2) (NP the/0 coffin/1) away/4",
    "(NP the/0 piece/1 (PP of/5 (NP apple/1))) (VP fell/2) (PP from/5 (NP her/0 lips/1))",
    "(NP snow/1 white/1) (VP opened/2) (NP her/0 eyes/1) again/4",
    "(NP the/0 prince/1) (VP asked/2) (PP for/5 (NP her/0 hand/1))",
    "(NP she/6) (VP rode/2) (PP with/5 (NP him/6)) (PP to/5 (NP the/0 palace/1))",
    "(NP the/0 wicked/3 queen/1) (VP came/2) (PP to/5 (NP the/0 wedding/1))",
    "(NP she/6) (VP saw/2) (NP the/0 bride/1) and/7 (VP froze/2) (PP with/5 (NP fear/1))",
    "(NP snow/1 white/1) and/7 (NP the/0 prince/1) (VP lived/2 happily/4 ever/4 after/4)",
]

MINI = [
    "(NP the/0 dog/1) (VP is/2) (PP in/5 (NP my/0 garden/1))",
    "(NP the/0 cat/1) (VP is/2) (PP in/5 (NP the/0 garden/1))",
    "(NP my/0 dog/1) (VP sleeps/2)",
]

MINI_PLUS = MINI + [
    "(NP a/0 cat/1) (VP sleeps/2) (PP in/5 (NP the/0 garden/1))",
    "(NP the/0 dog/1) (VP is/2) happy/3",
]

EXTRA_DECK = [
    ("dragon", 1),
    ("brave", 3),
    ("sang", 2),
    ("river", 1),
    ("golden", 3),
]


def parse_marked(text: str) -> dict:
    tokens: list[dict] = []
    phrases: list[dict] = []
    stack: list[tuple[str, int]] = []
    expect_label = False
    for piece in text.replace("(", " ( ").replace(")", " ) ").split():
        if piece == "(":
            expect_label = True
        elif expect_label:
            stack.append((piece, len(tokens)))
            expect_label = False
        elif piece == ")":
            label, start = stack.pop()
            phrases.append({"start": start, "end": len(tokens), "label": label})
        else:
            surface, _, pos = piece.rpartition("/")
            tokens.append({"surface": surface, "pos": int(pos)})
    if stack:
        raise ValueError(f"unbalanced brackets in: {text}")
    phrases.sort(key=lambda p: (p["start"], -p["end"], p["label"]))
    return {"tokens": tokens, "phrases": phrases}


def build(corpus_id: str, language: str, marked: list[str], legend: dict, palette: dict) -> str:
    doc = {
        "id": corpus_id,
        "hidden_language": language,
        "pos_legend": legend,
        "palette": palette,
        "sentences": [parse_marked(m) for m in marked],
    }
    text = canonical_json(doc)
    # must round through the validator cleanly and be serialization-stable
    round_tripped = canonical_json(corpus_to_dict(parse_corpus(text)))
    assert round_tripped == text
    return text


def main() -> None:
    out = ROOT / "src" / "lingua" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    mini_legend = {"0": "DET", "1": "NOUN", "2": "VERB", "5": "PREP"}
    plus_legend = dict(mini_legend, **{"3": "ADJ"})
    files = {
        "snow_white_en.json": build("en", "English", SNOW_WHITE, POS_LEGEND, PALETTE),
        "mini.json": build("mini", "English", MINI, mini_legend, PALETTE),
        "mini_plus.json": build("mini_plus", "English", MINI_PLUS, plus_legend, PALETTE),
    }
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
        print(f"wrote {out / name}")
    deck_lines = ["surface,pos"] + [f"{w},{p}" for w, p in EXTRA_DECK]
    (out / "snow_white_en.deck.csv").write_text("\n".join(deck_lines) + "\n", encoding="utf-8")
    print(f"wrote {out / 'snow_white_en.deck.csv'}")


if __name__ == "__main__":
    main()
