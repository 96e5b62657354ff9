from __future__ import annotations

import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lingua.bigrams import (
    BOS,
    EOS,
    STRICT,
    BigramModel,
    build_bigram_model,
    enumerate_sentences,
    model_from_dict,
    model_to_dict,
    order_tokens,
    validate_chain,
)
from lingua.corpus import parse_corpus

from conftest import corpus_doc

# ---------------------------------------------------------------- oracles


def oracle_counts(sentences: list[list[str]]) -> Counter:
    """Independent adjacency counter over clear word lists."""
    counts: Counter = Counter()
    for words in sentences:
        counts[(BOS, words[0])] += 1
        for i in range(len(words) - 1):
            counts[(words[i], words[i + 1])] += 1
        counts[(words[-1], EOS)] += 1
    return counts


def oracle_score(sentences: list[list[str]], chain: tuple[str, ...]) -> float:
    counts = oracle_counts(sentences)
    unigrams = Counter(w for s in sentences for w in s)
    v = len(unigrams) + 1
    pairs = [(BOS, chain[0]), *zip(chain, chain[1:]), (chain[-1], EOS)]
    total = 0.0
    for left, right in pairs:
        left_total = len(sentences) if left == BOS else unigrams.get(left, 0)
        total += math.log((counts.get((left, right), 0) + 1) / (left_total + v))
    return total


def oracle_rank(sentences: list[list[str]], salad: list[str]) -> list[tuple[str, ...]]:
    perms = sorted(set(itertools.permutations(salad)))
    return sorted(perms, key=lambda p: (-oracle_score(sentences, p), p))


def oracle_enumerate(sentences: list[list[str]], deck: list[str], min_len: int, max_len: int) -> set:
    """Brute force: every card sequence of admissible length, kept iff all
    pairs and both boundaries are attested."""
    counts = oracle_counts(sentences)
    found = set()
    for k in range(min_len, max_len + 1):
        for seq in set(itertools.permutations(deck, k)):
            pairs = [(BOS, seq[0]), *zip(seq, seq[1:]), (seq[-1], EOS)]
            if all(counts.get(p, 0) >= 1 for p in pairs):
                found.add(seq)
    return found


MINI_SENTENCES = [
    ["the", "dog", "is", "in", "my", "garden"],
    ["the", "cat", "is", "in", "the", "garden"],
    ["my", "dog", "sleeps"],
]

# ------------------------------------------------------------ model build


def test_build_model_mini_hand_counts(mini_corpus):
    model = build_bigram_model(mini_corpus)
    assert model.pair_count("the", "dog") == 1
    assert model.pair_count("is", "in") == 2
    assert model.pair_count(BOS, "the") == 2
    assert model.counts == dict(oracle_counts(MINI_SENTENCES))


def test_build_model_minimal_sentence():
    corpus = parse_corpus(corpus_doc([([("a", 0), ("b", 1)], [])]))
    model = build_bigram_model(corpus)
    assert model.counts == {(BOS, "a"): 1, ("a", "b"): 1, ("b", EOS): 1}


def test_figure_sentence_contributes_a_queen(figure_corpus):
    assert build_bigram_model(figure_corpus).pair_count("a", "queen") == 1


def test_boundary_counts_equal_sentence_count(workshop_corpus):
    model = build_bigram_model(workshop_corpus)
    begins = sum(c for (l, _), c in model.counts.items() if l == BOS)
    ends = sum(c for (_, r), c in model.counts.items() if r == EOS)
    assert begins == ends == len(workshop_corpus.sentences)


def test_model_serialization_round_trip(mini_corpus):
    model = build_bigram_model(mini_corpus)
    assert model_from_dict(model_to_dict(model)) == model


# ------------------------------------------------------------ chain check


def test_chain_valid_on_mini(mini_corpus):
    model = build_bigram_model(mini_corpus)
    verdict = validate_chain(model, ["the", "dog", "is", "in", "the", "garden"])
    assert verdict.valid and verdict.first_failure is None


def test_chain_first_failure_position(mini_corpus):
    model = build_bigram_model(mini_corpus)
    verdict = validate_chain(model, ["garden", "the"], require_boundaries=False)
    assert not verdict.valid
    assert verdict.first_failure == (0, "garden", "the")


def test_single_word_chain_without_boundaries(mini_corpus):
    model = build_bigram_model(mini_corpus)
    verdict = validate_chain(model, ["the"], require_boundaries=False)
    assert verdict.valid


def test_boundary_failure_reported_first(mini_corpus):
    model = build_bigram_model(mini_corpus)
    verdict = validate_chain(model, ["garden", "the"], require_boundaries=True)
    assert verdict.first_failure == (-1, BOS, "garden")


def test_empty_chain_rejected(mini_corpus):
    model = build_bigram_model(mini_corpus)
    with pytest.raises(ValueError):
        validate_chain(model, [])


def test_chain_score_matches_oracle(mini_corpus):
    model = build_bigram_model(mini_corpus)
    chain = ("the", "dog", "is", "in", "my", "garden")
    got = validate_chain(model, list(chain)).score
    assert got == pytest.approx(oracle_score(MINI_SENTENCES, chain))


# ------------------------------------------------------------- word salad


def test_order_tokens_mini_plus(mini_plus_corpus):
    model = build_bigram_model(mini_plus_corpus)
    salad = ["garden", "my", "is", "the", "in", "dog"]
    ranked = order_tokens(model, salad)
    sentences = [[t.surface for t in s.tokens] for s in mini_plus_corpus.sentences]
    expected = oracle_rank(sentences, salad)
    assert [r.words for r in ranked] == expected
    assert ranked[0].words == ("the", "dog", "is", "in", "my", "garden")


def test_order_singleton():
    corpus = parse_corpus(corpus_doc([([("a", 0)], [])]))
    model = build_bigram_model(corpus)
    ranked = order_tokens(model, ["a"])
    assert [r.words for r in ranked] == [("a",)]


def test_order_strict_unattested_word_empty(mini_corpus):
    model = build_bigram_model(mini_corpus)
    assert order_tokens(model, ["xylophone", "dog"], mode=STRICT) == []


def test_order_rejects_oversized_salad(mini_corpus):
    model = build_bigram_model(mini_corpus)
    with pytest.raises(ValueError):
        order_tokens(model, list("abcdefghijk"))
    with pytest.raises(ValueError):
        order_tokens(model, [])


def test_order_handles_repeated_words(mini_corpus):
    model = build_bigram_model(mini_corpus)
    ranked = order_tokens(model, ["the", "the", "garden"])
    assert len(ranked) == 3  # 3!/2! distinct permutations
    assert len({r.words for r in ranked}) == 3


# ------------------------------------------------------------ enumeration


def test_enumerate_matches_oracle_on_mini(mini_corpus):
    model = build_bigram_model(mini_corpus)
    deck = ["cat", "dog", "garden", "in", "is", "my", "sleeps", "the"]
    got = enumerate_sentences(model, deck, 3, 6)
    assert ("my", "dog", "sleeps") in got
    assert set(got) == oracle_enumerate(MINI_SENTENCES, deck, 3, 6)
    assert got == sorted(got)
    assert len(set(got)) == len(got)


def test_enumerate_disjoint_deck_empty(mini_corpus):
    model = build_bigram_model(mini_corpus)
    assert enumerate_sentences(model, ["zig", "zag"], 2, 4) == []


def test_enumerate_limit_takes_head(mini_corpus):
    model = build_bigram_model(mini_corpus)
    deck = ["cat", "dog", "garden", "in", "is", "my", "sleeps", "the"]
    full = enumerate_sentences(model, deck, 3, 6)
    assert enumerate_sentences(model, deck, 3, 6, limit=1) == full[:1]


def test_enumerate_contract_errors(mini_corpus):
    model = build_bigram_model(mini_corpus)
    with pytest.raises(ValueError):
        enumerate_sentences(model, [], 2, 4)
    with pytest.raises(ValueError):
        enumerate_sentences(model, ["a"], 1, 4)
    with pytest.raises(ValueError):
        enumerate_sentences(model, ["a"], 2, 13)


# ------------------------------------------------- randomized properties

tiny_word = st.sampled_from(["ba", "do", "fi", "gu", "ka", "lo", "mi", "na", "pe", "ra", "su", "ti"])
tiny_sentences = st.lists(st.lists(tiny_word, min_size=1, max_size=6), min_size=1, max_size=8)


def model_of(sentences: list[list[str]]) -> BigramModel:
    doc = corpus_doc([([(w, 0) for w in words], []) for words in sentences])
    return build_bigram_model(parse_corpus(doc))


@given(sentences=tiny_sentences, data=st.data())
@settings(max_examples=60, deadline=None)
def test_enumerate_equals_bruteforce(sentences, data):
    model = model_of(sentences)
    vocab = sorted({w for s in sentences for w in s})
    deck = data.draw(st.lists(st.sampled_from(vocab), min_size=1, max_size=8))
    got = enumerate_sentences(model, deck, 2, min(6, len(deck)) if len(deck) >= 2 else 2)
    assert set(got) == oracle_enumerate(sentences, deck, 2, min(6, len(deck)) if len(deck) >= 2 else 2)
    assert got == sorted(set(got))


@given(sentences=tiny_sentences, data=st.data())
@settings(max_examples=60, deadline=None)
def test_prefix_failure_implies_invalid(sentences, data):
    model = model_of(sentences)
    vocab = sorted({w for s in sentences for w in s})
    chain = data.draw(st.lists(st.sampled_from(vocab), min_size=2, max_size=6))
    verdict = validate_chain(model, chain, require_boundaries=False)
    for cut in range(2, len(chain)):
        prefix = validate_chain(model, chain[:cut], require_boundaries=False)
        if not prefix.valid:
            assert not verdict.valid
            assert verdict.first_failure == prefix.first_failure


@given(sentences=tiny_sentences, k=st.integers(min_value=2, max_value=5), data=st.data())
@settings(max_examples=40, deadline=None)
def test_count_scaling_preserves_validity(sentences, k, data):
    model = model_of(sentences)
    scaled = BigramModel(
        counts={p: c * k for p, c in model.counts.items()},
        unigram_counts={w: c * k for w, c in model.unigram_counts.items()},
        sentence_count=model.sentence_count * k,
    )
    vocab = sorted({w for s in sentences for w in s})
    chain = data.draw(st.lists(st.sampled_from(vocab), min_size=1, max_size=5))
    assert validate_chain(model, chain).valid == validate_chain(scaled, chain).valid
    salad = data.draw(st.lists(st.sampled_from(vocab), min_size=1, max_size=4))
    strict_a = [r.words for r in order_tokens(model, salad, mode=STRICT)]
    strict_b = [r.words for r in order_tokens(scaled, salad, mode=STRICT)]
    assert set(strict_a) == set(strict_b)


@given(sentences=tiny_sentences)
@settings(max_examples=30, deadline=None)
def test_ranking_matches_oracle_on_random_corpora(sentences):
    model = model_of(sentences)
    salad = sentences[0][:5]
    ranked = order_tokens(model, salad)
    assert [r.words for r in ranked] == oracle_rank(sentences, salad)
