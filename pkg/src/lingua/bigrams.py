"""Boundary-aware bigram model, bracelet-chain checking, candidate-sentence
enumeration, and the word-salad ordering solver.

Validity is binary on raw adjacency counts; add-one smoothed
log-likelihood is used only to rank orderings.  All outputs are
deterministic, with lexicographic tie-breaking throughout.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

BOS = "<s>"
EOS = "</s>"

MAX_SALAD = 10
MAX_CHAIN = 12

STRICT = "strict"
SMOOTHED = "smoothed"


@dataclass(frozen=True)
class BigramModel:
    counts: Mapping[tuple[str, str], int]
    unigram_counts: Mapping[str, int]
    sentence_count: int

    def pair_count(self, left: str, right: str) -> int:
        return self.counts.get((left, right), 0)

    def continuations(self, left: str) -> int:
        """Total successors of `left`; with EOS counted, every token
        occurrence has exactly one, so this equals its unigram count."""
        if left == BOS:
            return self.sentence_count
        return self.unigram_counts.get(left, 0)

    @property
    def smoothing_vocab_size(self) -> int:
        return len(self.unigram_counts) + 1  # EOS can follow anything

    def log_prob(self, left: str, right: str) -> float:
        smoothed = self.pair_count(left, right) + 1
        return math.log(smoothed / (self.continuations(left) + self.smoothing_vocab_size))


@dataclass(frozen=True)
class ChainVerdict:
    valid: bool
    first_failure: tuple[int, str, str] | None
    score: float


@dataclass(frozen=True)
class RankedOrdering:
    words: tuple[str, ...]
    score: float


def build_bigram_model(corpus: Any) -> BigramModel:
    """Count adjacent pairs with BOS before and EOS after every sentence.

    Accepts anything with a `sentences` attribute of token lists (clear or
    masked corpora alike).
    """
    counts: Counter[tuple[str, str]] = Counter()
    unigrams: Counter[str] = Counter()
    n_sentences = 0
    for sentence in corpus.sentences:
        surfaces = [t.surface for t in sentence.tokens]
        if not surfaces:
            continue
        n_sentences += 1
        unigrams.update(surfaces)
        padded = [BOS, *surfaces, EOS]
        counts.update(zip(padded, padded[1:]))
    return BigramModel(counts=dict(counts), unigram_counts=dict(unigrams), sentence_count=n_sentences)


def chain_pairs(chain: Sequence[str], boundaries: bool) -> list[tuple[int, str, str]]:
    """Adjacent pairs of a chain with their positions; boundary pairs carry
    the positions -1 (before the first word) and len-1 (the last word)."""
    pairs: list[tuple[int, str, str]] = []
    if boundaries:
        pairs.append((-1, BOS, chain[0]))
    for i in range(len(chain) - 1):
        pairs.append((i, chain[i], chain[i + 1]))
    if boundaries:
        pairs.append((len(chain) - 1, chain[-1], EOS))
    return pairs


def validate_chain(model: BigramModel, chain: Sequence[str], require_boundaries: bool = True) -> ChainVerdict:
    """Check that every adjacent pair (and, optionally, both boundary pairs)
    is attested; the score is the add-one-smoothed log-likelihood of the
    same pairs."""
    if not chain:
        raise ValueError("chain must contain at least one word")
    pairs = chain_pairs(chain, require_boundaries)
    first_failure = None
    score = 0.0
    for position, left, right in pairs:
        if first_failure is None and model.pair_count(left, right) < 1:
            first_failure = (position, left, right)
        score += model.log_prob(left, right)
    return ChainVerdict(valid=first_failure is None, first_failure=first_failure, score=score)


def _distinct_permutations(items: list[str]):
    """Yield the distinct permutations of a sorted multiset in lexicographic
    order."""
    counter = Counter(items)
    keys = sorted(counter)
    current: list[str] = []
    total = len(items)

    def walk():
        if len(current) == total:
            yield tuple(current)
            return
        for key in keys:
            if counter[key]:
                counter[key] -= 1
                current.append(key)
                yield from walk()
                current.pop()
                counter[key] += 1

    yield from walk()


def order_tokens(
    model: BigramModel,
    salad: Iterable[str],
    mode: str = SMOOTHED,
    limit: int | None = None,
) -> list[RankedOrdering]:
    """Solve the word salad: rank orderings of the given multiset.

    Strict mode keeps only orderings whose every pair and both boundaries
    are attested; smoothed mode ranks all permutations.  The ranking is
    total: descending score, ties broken lexicographically.
    """
    words = sorted(salad)
    if not words:
        raise ValueError("salad must contain at least one word")
    if len(words) > MAX_SALAD:
        raise ValueError(f"salad of {len(words)} words exceeds the exhaustive-search bound {MAX_SALAD}")
    if mode not in (STRICT, SMOOTHED):
        raise ValueError(f"unknown mode {mode!r}")

    symbols = set(words) | {BOS, EOS}
    pair_score = {(l, r): model.log_prob(l, r) for l in symbols for r in symbols}
    pair_ok = {(l, r): model.pair_count(l, r) >= 1 for l in symbols for r in symbols}

    ranked: list[tuple[float, tuple[str, ...]]] = []
    for perm in _distinct_permutations(words):
        pairs = [(BOS, perm[0]), *zip(perm, perm[1:]), (perm[-1], EOS)]
        if mode == STRICT and not all(pair_ok[p] for p in pairs):
            continue
        ranked.append((sum(pair_score[p] for p in pairs), perm))
    ranked.sort(key=lambda item: (-item[0], item[1]))
    if limit is not None:
        ranked = ranked[:limit]
    return [RankedOrdering(words=perm, score=score) for score, perm in ranked]


def enumerate_sentences(
    model: BigramModel,
    deck: Iterable[str],
    min_len: int = 2,
    max_len: int = 8,
    limit: int | None = None,
) -> list[tuple[str, ...]]:
    """Depth-first enumeration of bracelet sentences buildable from the deck.

    Each deck card is used at most once per chain; every returned chain
    passes validate_chain with boundaries on.  Output comes in
    lexicographic order, duplicate-free, truncated at `limit`.
    """
    remaining = Counter(deck)
    if not remaining:
        raise ValueError("deck must not be empty")
    if min_len < 2:
        raise ValueError("min_len must be at least 2")
    if max_len > MAX_CHAIN:
        raise ValueError(f"max_len must not exceed {MAX_CHAIN}")
    if min_len > max_len:
        raise ValueError("min_len must not exceed max_len")

    surfaces = sorted(remaining)
    results: list[tuple[str, ...]] = []
    chain: list[str] = []

    def full() -> bool:
        return limit is not None and len(results) >= limit

    def extend() -> None:
        last = chain[-1]
        if len(chain) >= min_len and model.pair_count(last, EOS) >= 1:
            results.append(tuple(chain))
            if full():
                return
        if len(chain) == max_len:
            return
        for word in surfaces:
            if remaining[word] and model.pair_count(last, word) >= 1:
                remaining[word] -= 1
                chain.append(word)
                extend()
                chain.pop()
                remaining[word] += 1
                if full():
                    return

    for word in surfaces:
        if model.pair_count(BOS, word) >= 1:
            remaining[word] -= 1
            chain.append(word)
            extend()
            chain.pop()
            remaining[word] += 1
            if full():
                break
    return results


def model_to_dict(model: BigramModel) -> dict[str, Any]:
    nested: dict[str, dict[str, int]] = {}
    for (left, right), count in model.counts.items():
        nested.setdefault(left, {})[right] = count
    return {
        "counts": {left: dict(sorted(rights.items())) for left, rights in sorted(nested.items())},
        "unigram_counts": dict(sorted(model.unigram_counts.items())),
        "sentence_count": model.sentence_count,
    }


def model_from_dict(obj: Mapping[str, Any]) -> BigramModel:
    counts = {
        (left, right): int(count)
        for left, rights in obj["counts"].items()
        for right, count in rights.items()
    }
    return BigramModel(
        counts=counts,
        unigram_counts={w: int(c) for w, c in obj["unigram_counts"].items()},
        sentence_count=int(obj["sentence_count"]),
    )
