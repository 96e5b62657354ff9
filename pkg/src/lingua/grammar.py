"""Flat context-free grammar induced from phrase annotation, plus the rule
checker, chart parser, and deck-driven sentence derivation.

Grammar symbols are strings: phrase labels (e.g. "NP") are nonterminals,
single digits "0".."9" are POS terminals, and the synthetic start symbol
"S" stands for the whole sentence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .corpus import AnnotatedCorpus, PhraseSpan, Sentence

START = "S"

MAX_SEQUENCE = 25


def is_terminal(symbol: str) -> bool:
    return len(symbol) == 1 and symbol.isdigit()


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]
    count: int = 1

    def __post_init__(self) -> None:
        if not self.rhs:
            raise ValueError("rule right-hand side must not be empty")

    def key(self) -> tuple[str, tuple[str, ...]]:
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    labels: frozenset[str]
    start: str = START
    _by_lhs: Mapping[str, tuple[Rule, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_lhs: dict[str, list[Rule]] = {}
        for rule in self.rules:
            by_lhs.setdefault(rule.lhs, []).append(rule)
        object.__setattr__(self, "_by_lhs", {lhs: tuple(v) for lhs, v in by_lhs.items()})

    @staticmethod
    def from_rules(rules: Iterable[Rule], labels: Iterable[str] = ()) -> "RuleSet":
        ordered = tuple(sorted(rules, key=Rule.key))
        keys = [r.key() for r in ordered]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (lhs, rhs) keys in rule set")
        seen = set(labels)
        for rule in ordered:
            seen.add(rule.lhs)
            seen.update(sym for sym in rule.rhs if not is_terminal(sym))
        seen.discard(START)
        return RuleSet(rules=ordered, labels=frozenset(seen))

    def rules_for(self, lhs: str) -> tuple[Rule, ...]:
        return self._by_lhs.get(lhs, ())

    def count_of(self, lhs: str, rhs: Sequence[str]) -> int:
        target = tuple(rhs)
        for rule in self.rules_for(lhs):
            if rule.rhs == target:
                return rule.count
        return 0


@dataclass(frozen=True)
class DeckCard:
    surface: str
    pos: int
    in_corpus: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.pos <= 9:
            raise ValueError(f"card pos {self.pos} out of range 0..9")


@dataclass(frozen=True)
class Derivation:
    """Derivation tree node; children are sub-derivations or terminal digits."""

    symbol: str
    children: tuple["Derivation | int", ...]

    def leaves(self) -> tuple[int, ...]:
        out: list[int] = []
        for child in self.children:
            if isinstance(child, Derivation):
                out.extend(child.leaves())
            else:
                out.append(child)
        return tuple(out)


@dataclass(frozen=True)
class RuleCheck:
    accepted: bool
    reason: str | None = None


@dataclass(frozen=True)
class ParseResult:
    derivable: bool
    trees: tuple[Derivation, ...]
    longest_prefix: int


def _immediate_children(sentence: Sentence, container: PhraseSpan | None) -> tuple[str, ...]:
    """RHS for the rule contributed by `container` (None means the implicit
    whole-sentence start symbol): maximal sub-spans left to right, with the
    POS digits of uncovered tokens in between."""
    if container is None:
        lo, hi = 0, len(sentence.tokens)
        candidates = list(sentence.phrases)
    else:
        lo, hi = container.start, container.end
        candidates = [
            s
            for s in sentence.phrases
            if lo <= s.start and s.end <= hi and (s.start, s.end) != (lo, hi)
        ]
    maximal = [
        s
        for s in candidates
        if not any(
            o is not s and o.start <= s.start and s.end <= o.end and (o.start, o.end) != (s.start, s.end)
            for o in candidates
        )
    ]
    by_start = {s.start: s for s in maximal}
    rhs: list[str] = []
    pos = lo
    while pos < hi:
        span = by_start.get(pos)
        if span is not None:
            rhs.append(span.label)
            pos = span.end
        else:
            rhs.append(str(sentence.tokens[pos].pos))
            pos += 1
    return tuple(rhs)


def extract_rules(corpus: AnnotatedCorpus) -> RuleSet:
    """Read one flat rule off every phrase span plus one start rule per
    sentence, aggregating counts over identical (lhs, rhs)."""
    tally: Counter[tuple[str, tuple[str, ...]]] = Counter()
    for sentence in corpus.sentences:
        tally[(START, _immediate_children(sentence, None))] += 1
        for span in sentence.phrases:
            tally[(span.label, _immediate_children(sentence, span))] += 1
    rules = [Rule(lhs=lhs, rhs=rhs, count=count) for (lhs, rhs), count in tally.items()]
    return RuleSet.from_rules(rules, labels=corpus.palette.keys())


def check_rule(ruleset: RuleSet, candidate: Rule) -> RuleCheck:
    """Strict membership check against the extracted rules.

    Raises ValueError for candidates outside the rule contract (unknown
    labels or non-digit terminals); returns a verdict otherwise.
    """
    known = ruleset.labels | {ruleset.start}
    if candidate.lhs not in known:
        raise ValueError(f"candidate lhs {candidate.lhs!r} is not a known phrase label")
    for sym in candidate.rhs:
        if not is_terminal(sym) and sym not in known:
            raise ValueError(f"candidate rhs symbol {sym!r} is neither a POS digit nor a known label")
    if not ruleset.rules_for(candidate.lhs):
        return RuleCheck(accepted=False, reason=f"unknown lhs: no rule in the corpus rewrites {candidate.lhs}")
    if ruleset.count_of(candidate.lhs, candidate.rhs) < 1:
        return RuleCheck(
            accepted=False,
            reason=f"rhs never attested for {candidate.lhs}: {' '.join(candidate.rhs)}",
        )
    return RuleCheck(accepted=True)


class _Chart:
    """Earley chart over a digit sequence: general CFG, mixed terminals,
    no binarization, no epsilon rules."""

    def __init__(self, ruleset: RuleSet, digits: Sequence[str]):
        self.ruleset = ruleset
        self.digits = digits
        n = len(digits)
        self.items: list[list[tuple[str, tuple[str, ...], int, int]]] = [[] for _ in range(n + 1)]
        self.seen: list[set[tuple[str, tuple[str, ...], int, int]]] = [set() for _ in range(n + 1)]
        self.run()

    def add(self, pos: int, item: tuple[str, tuple[str, ...], int, int]) -> None:
        if item not in self.seen[pos]:
            self.seen[pos].add(item)
            self.items[pos].append(item)

    def run(self) -> None:
        for rule in self.ruleset.rules_for(self.ruleset.start):
            self.add(0, (rule.lhs, rule.rhs, 0, 0))
        for pos in range(len(self.digits) + 1):
            cursor = 0
            worklist = self.items[pos]
            while cursor < len(worklist):
                lhs, rhs, dot, origin = worklist[cursor]
                cursor += 1
                if dot == len(rhs):
                    for other in self.items[origin]:
                        o_lhs, o_rhs, o_dot, o_origin = other
                        if o_dot < len(o_rhs) and o_rhs[o_dot] == lhs:
                            self.add(pos, (o_lhs, o_rhs, o_dot + 1, o_origin))
                    continue
                wanted = rhs[dot]
                if is_terminal(wanted):
                    if pos < len(self.digits) and self.digits[pos] == wanted:
                        self.add(pos + 1, (lhs, rhs, dot + 1, origin))
                else:
                    for rule in self.ruleset.rules_for(wanted):
                        self.add(pos, (rule.lhs, rule.rhs, 0, pos))

    def derivable(self) -> bool:
        n = len(self.digits)
        return any(
            lhs == self.ruleset.start and dot == len(rhs) and origin == 0
            for lhs, rhs, dot, origin in self.items[n]
        )

    def longest_prefix(self) -> int:
        consumed = 0
        for pos in range(len(self.digits) + 1):
            if self.items[pos]:
                consumed = pos
        return consumed

    def completions(self) -> dict[tuple[str, int, int], list[tuple[str, ...]]]:
        """Map (symbol, start, end) -> sorted attested right-hand sides."""
        out: dict[tuple[str, int, int], set[tuple[str, ...]]] = {}
        for pos, items in enumerate(self.items):
            for lhs, rhs, dot, origin in items:
                if dot == len(rhs):
                    out.setdefault((lhs, origin, pos), set()).add(rhs)
        return {key: sorted(value) for key, value in out.items()}


def _build_trees(
    completions: dict[tuple[str, int, int], list[tuple[str, ...]]],
    digits: Sequence[str],
    symbol: str,
    start: int,
    end: int,
    on_path: frozenset[tuple[str, int, int]],
) -> Iterator[Derivation]:
    key = (symbol, start, end)
    if key in on_path or key not in completions:
        return
    guarded = on_path | {key}

    def match(rhs: Sequence[str], pos: int) -> Iterator[tuple["Derivation | int", ...]]:
        if not rhs:
            if pos == end:
                yield ()
            return
        head, rest = rhs[0], rhs[1:]
        if is_terminal(head):
            if pos < end and digits[pos] == head:
                for tail in match(rest, pos + 1):
                    yield (int(head), *tail)
            return
        for stop in range(pos + 1, end + 1):
            if (head, pos, stop) not in completions:
                continue
            tails = list(match(rest, stop))
            if not tails:
                continue
            for subtree in _build_trees(completions, digits, head, pos, stop, guarded):
                for tail in tails:
                    yield (subtree, *tail)

    for rhs in completions[key]:
        for children in match(rhs, start):
            yield Derivation(symbol=symbol, children=children)


def parse_sequence(ruleset: RuleSet, pos_sequence: Sequence[int], max_trees: int = 1) -> ParseResult:
    """Chart-based recognition of a POS digit sequence.

    When the sequence derives from the start symbol, the result carries up
    to `max_trees` derivation trees whose leaves reproduce the input; a
    no-parse carries the number of leading digits the parser could consume.
    """
    if not 1 <= len(pos_sequence) <= MAX_SEQUENCE:
        raise ValueError(f"sequence length must be in 1..{MAX_SEQUENCE}")
    for digit in pos_sequence:
        if not 0 <= int(digit) <= 9:
            raise ValueError(f"POS digit {digit} out of range 0..9")
    digits = [str(int(d)) for d in pos_sequence]
    chart = _Chart(ruleset, digits)
    if not chart.derivable():
        return ParseResult(derivable=False, trees=(), longest_prefix=chart.longest_prefix())
    trees: list[Derivation] = []
    builder = _build_trees(chart.completions(), digits, ruleset.start, 0, len(digits), frozenset())
    for tree in builder:
        trees.append(tree)
        if len(trees) >= max_trees:
            break
    return ParseResult(derivable=True, trees=tuple(trees), longest_prefix=len(digits))


def _expand_symbol(ruleset: RuleSet, symbol: str, depth: int, budget: Counter) -> Iterator[Derivation]:
    """Leftmost depth-bounded expansion, pruned by the deck's POS supply so
    branches the deck can never instantiate are skipped outright."""
    if depth <= 0:
        return
    for rule in ruleset.rules_for(symbol):
        for children in _expand_sequence(ruleset, rule.rhs, depth, budget):
            yield Derivation(symbol=symbol, children=children)


def _expand_sequence(
    ruleset: RuleSet, symbols: Sequence[str], depth: int, budget: Counter
) -> Iterator[tuple["Derivation | int", ...]]:
    if not symbols:
        yield ()
        return
    head, rest = symbols[0], symbols[1:]
    if is_terminal(head):
        digit = int(head)
        if budget[digit] <= 0:
            return
        budget[digit] -= 1
        for tail in _expand_sequence(ruleset, rest, depth, budget):
            yield (digit, *tail)
        budget[digit] += 1
        return
    for subtree in _expand_symbol(ruleset, head, depth - 1, budget):
        for tail in _expand_sequence(ruleset, rest, depth, budget):
            yield (subtree, *tail)


def _assignments(digits: Sequence[int], by_pos: Mapping[int, list[str]], available: Counter) -> Iterator[tuple[str, ...]]:
    if not digits:
        yield ()
        return
    head, rest = digits[0], digits[1:]
    for surface in by_pos.get(head, ()):
        if available[(surface, head)]:
            available[(surface, head)] -= 1
            for tail in _assignments(rest, by_pos, available):
                yield (surface, *tail)
            available[(surface, head)] += 1


def derive_sentences(
    ruleset: RuleSet,
    deck: Sequence[DeckCard],
    max_depth: int = 6,
    limit: int | None = None,
) -> list[tuple[tuple[str, ...], Derivation]]:
    """Expand the start symbol depth-bounded, then instantiate terminal POS
    digits with deck cards of matching POS (each card at most once per
    sentence).  Deterministic order, duplicates removed, truncated at
    `limit`."""
    if not deck:
        raise ValueError("deck must not be empty")
    available: Counter = Counter((card.surface, card.pos) for card in deck)
    by_pos: dict[int, list[str]] = {}
    for surface, pos in sorted(available):
        by_pos.setdefault(pos, []).append(surface)
    budget = Counter(card.pos for card in deck)

    results: list[tuple[tuple[str, ...], Derivation]] = []
    emitted: set[tuple[str, ...]] = set()
    for tree in _expand_symbol(ruleset, ruleset.start, max_depth, budget):
        digits = tree.leaves()
        for words in _assignments(digits, by_pos, available):
            if words in emitted:
                continue
            emitted.add(words)
            results.append((words, tree))
            if limit is not None and len(results) >= limit:
                return results
    return results


def rules_to_list(ruleset: RuleSet) -> list[dict[str, Any]]:
    """Canonical rules-file payload: sorted by (lhs, rhs)."""
    return [{"lhs": r.lhs, "rhs": list(r.rhs), "count": r.count} for r in ruleset.rules]


def rules_from_list(payload: Iterable[Mapping[str, Any]]) -> RuleSet:
    rules = [
        Rule(lhs=str(item["lhs"]), rhs=tuple(str(s) for s in item["rhs"]), count=int(item.get("count", 1)))
        for item in payload
    ]
    return RuleSet.from_rules(rules)
