# ==================== LIMAVG AUTOMATON ====================
# File: core/automaton.py

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from core.alphabet import Alphabet, WordLike
from core.errors import InputError

Transition = Tuple[int, str, int, Fraction]


@dataclass(frozen=True)
class Automaton:
    """Deterministic complete LimAvg automaton.

    ``delta[q][i]`` and ``weights[q][i]`` are the target and weight of the
    transition leaving state ``q`` on the letter with index ``i``. Instances
    built through :meth:`build` may contain ``None`` holes; :func:`validate`
    names them and every analysis assumes a valid automaton.
    """

    alphabet: Alphabet
    state_count: int
    initial: int
    delta: Tuple[Tuple[Optional[int], ...], ...]
    weights: Tuple[Tuple[Optional[Fraction], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(
            self,
            "weights",
            tuple(tuple(None if w is None else Fraction(w) for w in row) for row in self.weights),
        )

    # ----- construction -----

    @classmethod
    def build(
        cls,
        alphabet: Alphabet,
        state_count: int,
        transitions: Iterable[Tuple[int, str, int, object]],
        initial: int = 0,
    ) -> "Automaton":
        """Assemble from ``(source, letter, target, weight)`` rows; later rows win."""
        size = len(alphabet)
        delta: List[List[Optional[int]]] = [[None] * size for _ in range(state_count)]
        weights: List[List[Optional[Fraction]]] = [[None] * size for _ in range(state_count)]
        for source, letter, target, weight in transitions:
            if not 0 <= source < state_count:
                raise InputError(f"transition source {source} out of range")
            i = alphabet.index(letter)
            delta[source][i] = target
            weights[source][i] = Fraction(weight)
        return cls(alphabet, state_count, initial, tuple(map(tuple, delta)), tuple(map(tuple, weights)))

    @classmethod
    def constant(cls, alphabet: Alphabet, value) -> "Automaton":
        value = Fraction(value)
        return cls(alphabet, 1, 0, (tuple([0] * len(alphabet)),), (tuple([value] * len(alphabet)),))

    # ----- queries -----

    @property
    def states(self) -> range:
        return range(self.state_count)

    def step(self, state: int, letter_index: int) -> int:
        return self.delta[state][letter_index]

    def weight(self, state: int, letter_index: int) -> Fraction:
        return self.weights[state][letter_index]

    def run(self, word: WordLike, start: Optional[int] = None) -> int:
        return self.run_indices(self.alphabet.indices(word), start)

    def run_indices(self, indices: Sequence[int], start: Optional[int] = None) -> int:
        state = self.initial if start is None else start
        for i in indices:
            state = self.delta[state][i]
        return state

    def rooted(self, state: int) -> "Automaton":
        """The same automaton started in ``state``."""
        return Automaton(self.alphabet, self.state_count, state, self.delta, self.weights)

    def transitions(self) -> Iterator[Transition]:
        """Rows in canonical order: by source, then letter index."""
        for q in self.states:
            for i, letter in enumerate(self.alphabet.letters):
                yield q, letter, self.delta[q][i], self.weights[q][i]

    def encoding_size(self) -> int:
        """States plus the bit length of every weight's numerator and denominator."""
        bits = 0
        for row in self.weights:
            for w in row:
                bits += abs(w.numerator).bit_length() + w.denominator.bit_length()
        return self.state_count + bits

    def transition_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        for q in self.states:
            for target in self.delta[q]:
                graph.add_edge(q, target)
        return graph

    def reachable_states(self) -> List[int]:
        """States reachable from the initial one, in BFS order (letters in index order)."""
        seen = {self.initial}
        order = [self.initial]
        queue = deque(order)
        while queue:
            q = queue.popleft()
            for target in self.delta[q]:
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def trimmed(self) -> "Automaton":
        """Drop unreachable states and renumber the rest in BFS order."""
        order = self.reachable_states()
        renumber = {old: new for new, old in enumerate(order)}
        delta = tuple(tuple(renumber[t] for t in self.delta[old]) for old in order)
        weights = tuple(self.weights[old] for old in order)
        return Automaton(self.alphabet, len(order), 0, delta, weights)

    def with_weights(self, weights: Sequence[Sequence[Fraction]]) -> "Automaton":
        return Automaton(self.alphabet, self.state_count, self.initial, self.delta, tuple(map(tuple, weights)))


def validate(automaton: Automaton) -> List[str]:
    """Every violated automaton invariant, named; an empty list means ok."""
    defects: List[str] = []
    size = len(automaton.alphabet)
    if automaton.state_count < 1:
        defects.append("state count must be positive")
    if not 0 <= automaton.initial < max(automaton.state_count, 0):
        defects.append(f"initial state {automaton.initial} out of range")
    if len(automaton.delta) != automaton.state_count or len(automaton.weights) != automaton.state_count:
        defects.append("incomplete transition function")
        return defects

    incomplete = False
    for q in range(automaton.state_count):
        row, wrow = automaton.delta[q], automaton.weights[q]
        if len(row) != size or len(wrow) != size or any(t is None for t in row) or any(w is None for w in wrow):
            incomplete = True
            continue
        for i, target in enumerate(row):
            if not isinstance(target, int) or not 0 <= target < automaton.state_count:
                defects.append(f"dangling target {target!r} on ({q}, {automaton.alphabet.letters[i]!r})")
    if incomplete:
        defects.insert(0, "incomplete transition function")
    return defects


def require_valid(automaton: Automaton) -> Automaton:
    defects = validate(automaton)
    if defects:
        raise InputError("invalid automaton: " + "; ".join(defects))
    return automaton


def require_same_alphabet(*automata) -> Alphabet:
    alphabet = automata[0].alphabet
    for other in automata[1:]:
        if other.alphabet != alphabet:
            raise InputError(f"alphabet mismatch: {list(alphabet)} vs {list(other.alphabet)}")
    return alphabet


def partial_average(automaton: Automaton, word: WordLike) -> Fraction:
    """Average transition weight along the run on a finite word (0 for the empty word)."""
    indices = automaton.alphabet.indices(word)
    if not indices:
        return Fraction(0)
    state = automaton.initial
    # count transitions first; rational arithmetic once per distinct transition
    taken = Counter()
    for i in indices:
        taken[state, i] += 1
        state = automaton.delta[state][i]
    total = sum((count * automaton.weights[q][i] for (q, i), count in taken.items()), Fraction(0))
    return total / len(indices)
