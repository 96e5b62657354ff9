from __future__ import annotations

import json

import pytest

from lingua.corpus import parse_corpus
from lingua.fixtures import fixture_path


def corpus_doc(sentences, pos_legend=None, palette=None, corpus_id="t", language="Testish"):
    """Assemble a corpus interchange document from shorthand sentences:
    each sentence is (list of (surface, pos), list of (start, end, label))."""
    return json.dumps(
        {
            "id": corpus_id,
            "hidden_language": language,
            "pos_legend": pos_legend or {str(d): f"POS{d}" for d in range(10)},
            "palette": palette or {"NP": "crimson", "VP": "navy", "PP": "olive"},
            "sentences": [
                {
                    "tokens": [{"surface": s, "pos": p} for s, p in tokens],
                    "phrases": [{"start": a, "end": b, "label": l} for a, b, l in phrases],
                }
                for tokens, phrases in sentences
            ],
        }
    )


FIGURE_SENTENCE = (
    [
        ("on", 5),
        ("a", 0),
        ("snowy", 3),
        ("day", 1),
        ("a", 0),
        ("queen", 1),
        ("was", 8),
        ("sewing", 2),
        ("by", 5),
        ("her", 0),
        ("window", 1),
    ],
    [(0, 4, "PP"), (1, 4, "NP"), (4, 6, "NP"), (6, 8, "VP"), (8, 11, "PP"), (9, 11, "NP")],
)


@pytest.fixture(scope="session")
def figure_corpus():
    return parse_corpus(corpus_doc([FIGURE_SENTENCE]))


@pytest.fixture(scope="session")
def mini_corpus():
    return parse_corpus(fixture_path("mini.json").read_bytes())


@pytest.fixture(scope="session")
def mini_plus_corpus():
    return parse_corpus(fixture_path("mini_plus.json").read_bytes())


@pytest.fixture(scope="session")
def workshop_corpus():
    return parse_corpus(fixture_path("snow_white_en.json").read_bytes())
