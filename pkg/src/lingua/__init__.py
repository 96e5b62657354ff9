"""Mystery-language workshop toolkit: corpus masking, bigram and grammar
games, printable materials, and a live game service."""

__version__ = "0.1.0"

from .corpus import AnnotatedCorpus, parse_corpus, serialize_corpus, validate_corpus, vocabulary
from .masking import Lexicon, MaskScheme, build_lexicon, mask_corpus, reveal
from .bigrams import BigramModel, build_bigram_model, enumerate_sentences, order_tokens, validate_chain
from .grammar import Rule, RuleSet, check_rule, derive_sentences, extract_rules, parse_sequence

__all__ = [
    "AnnotatedCorpus",
    "BigramModel",
    "Lexicon",
    "MaskScheme",
    "Rule",
    "RuleSet",
    "build_bigram_model",
    "build_lexicon",
    "check_rule",
    "derive_sentences",
    "enumerate_sentences",
    "extract_rules",
    "mask_corpus",
    "order_tokens",
    "parse_corpus",
    "parse_sequence",
    "reveal",
    "serialize_corpus",
    "validate_chain",
    "validate_corpus",
    "vocabulary",
]
