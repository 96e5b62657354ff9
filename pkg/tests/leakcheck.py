"""Shared no-leak scanner: flags clear-text corpus words (or the hidden
language name) appearing anywhere in a response body."""

from __future__ import annotations

import re

from lingua.corpus import AnnotatedCorpus, vocabulary

WORD_RE = re.compile(r"[a-zà-ÿ']+")


def forbidden_words(corpus: AnnotatedCorpus) -> set[str]:
    return set(vocabulary(corpus).surfaces) | {corpus.hidden_language.lower()}


def leaked_words(text: str, forbidden: set[str]) -> set[str]:
    return set(WORD_RE.findall(text.lower())) & forbidden
