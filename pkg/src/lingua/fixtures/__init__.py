"""Shipped corpora: the 60-sentence workshop corpus and two small test
corpora (MINI and MINI-plus)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..corpus import AnnotatedCorpus, parse_corpus


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__package__) / name))


def load_fixture(name: str) -> AnnotatedCorpus:
    return parse_corpus(fixture_path(name).read_bytes())


def snow_white() -> AnnotatedCorpus:
    return load_fixture("snow_white_en.json")


def mini() -> AnnotatedCorpus:
    return load_fixture("mini.json")


def mini_plus() -> AnnotatedCorpus:
    return load_fixture("mini_plus.json")
