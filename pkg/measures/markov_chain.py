# ==================== MARKOV CHAINS ====================
# File: measures/markov_chain.py

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from core.alphabet import Alphabet, WordLike
from core.errors import InputError

Edge = Tuple[int, int, int, Fraction]


@dataclass(frozen=True)
class MarkovChain:
    """Letter-emitting chain; ``edges`` rows are ``(state, letter index, next state, probability)``."""

    alphabet: Alphabet
    state_count: int
    initial: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        merged = {}
        for s, i, t, p in self.edges:
            p = Fraction(p)
            if p < 0:
                raise InputError(f"negative probability on edge ({s}, {self.alphabet.letters[i]!r}, {t})")
            if not (0 <= s < self.state_count and 0 <= t < self.state_count):
                raise InputError(f"chain edge ({s}, {t}) out of range")
            if p:
                merged[(s, i, t)] = merged.get((s, i, t), Fraction(0)) + p
        object.__setattr__(self, "edges", tuple((s, i, t, p) for (s, i, t), p in sorted(merged.items())))
        if not 0 <= self.initial < self.state_count:
            raise InputError(f"initial chain state {self.initial} out of range")
        for s in range(self.state_count):
            mass = sum((p for src, _, _, p in self.edges if src == s), Fraction(0))
            if mass != 1:
                raise InputError(f"chain state {s} has outgoing probability {mass}, expected 1")

    @classmethod
    def build(cls, alphabet: Alphabet, state_count: int, edges: Iterable[Tuple[int, str, int, object]], initial: int = 0) -> "MarkovChain":
        rows = tuple((s, alphabet.index(letter), t, Fraction(p)) for s, letter, t, p in edges)
        return cls(alphabet, state_count, initial, rows)

    @classmethod
    def uniform(cls, alphabet: Alphabet) -> "MarkovChain":
        """Single state emitting every letter with probability 1/|Σ|."""
        p = Fraction(1, len(alphabet))
        return cls(alphabet, 1, 0, tuple((0, i, 0, p) for i in range(len(alphabet))))

    @cached_property
    def out_edges(self) -> Tuple[Tuple[Tuple[int, int, Fraction], ...], ...]:
        """Per state: ``(letter index, next state, probability)`` sorted by letter then target."""
        rows: List[List[Tuple[int, int, Fraction]]] = [[] for _ in range(self.state_count)]
        for s, i, t, p in self.edges:
            rows[s].append((i, t, p))
        return tuple(tuple(row) for row in rows)

    @cached_property
    def is_uniform(self) -> bool:
        return self == MarkovChain.uniform(self.alphabet)

    def step_distribution(self, weights: Sequence[Fraction], letter_index: int) -> List[Fraction]:
        """Unnormalised state weights after emitting one letter."""
        result = [Fraction(0)] * self.state_count
        for s, mass in enumerate(weights):
            if mass:
                for i, t, p in self.out_edges[s]:
                    if i == letter_index:
                        result[t] += mass * p
        return result

    def state_weights(self, word: WordLike) -> List[Fraction]:
        """Joint probability of emitting ``word`` and ending in each state."""
        weights = [Fraction(0)] * self.state_count
        weights[self.initial] = Fraction(1)
        for i in self.alphabet.indices(word):
            weights = self.step_distribution(weights, i)
        return weights

    def cylinder_probability(self, word: WordLike) -> Fraction:
        return sum(self.state_weights(word), Fraction(0))


def is_non_vanishing(chain: MarkovChain) -> bool:
    """Every finite word has positive cylinder probability.

    Subset construction over supports: from every reachable support set, each
    letter needs a positive edge out of at least one member.
    """
    start = frozenset([chain.initial])
    seen = {start}
    pending = [start]
    while pending:
        support = pending.pop()
        for i in range(len(chain.alphabet)):
            successors = frozenset(t for s in support for letter, t, _ in chain.out_edges[s] if letter == i)
            if not successors:
                return False
            if successors not in seen:
                seen.add(successors)
                pending.append(successors)
    return True
