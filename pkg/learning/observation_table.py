# ==================== OBSERVATION TABLE ====================
# File: learning/observation_table.py

"""Access words, test words and the expectation cells of the learner.

Rows compare by exact equality of E(L | u t Σ^ω) over the test words t.
Tables are immutable; every operation returns a new table.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config.settings import settings
from core.alphabet import Word, WordLike
from core.automaton import Automaton
from core.errors import InputError, InvariantError
from core.scc import scc_decompose
from analysis.expectation import conditional_expectation
from learning.teacher import Teacher

logger = logging.getLogger(__name__)

Row = Tuple[Fraction, ...]


@dataclass(frozen=True)
class ObservationTable:
    access: Tuple[Word, ...] = ((),)
    tests: Tuple[Word, ...] = ((),)
    answers: Dict[Word, Fraction] = field(default_factory=dict, compare=False)

    def row(self, word: Word) -> Row:
        return tuple(self.answers[word + t] for t in self.tests)

    def extensions(self, alphabet) -> List[Word]:
        return [u + (a,) for u in self.access for a in alphabet.letters]

    def find_row(self, word: Word) -> Optional[int]:
        target = self.row(word)
        for k, u in enumerate(self.access):
            if self.row(u) == target:
                return k
        return None

    def as_dict(self, alphabet) -> Dict[str, object]:
        show = alphabet.format_word
        return {
            "access": [show(u) for u in self.access],
            "tests": [show(t) for t in self.tests],
            "rows": {show(u): [str(x) for x in self.row(u)] for u in self.access},
        }


def fill(table: ObservationTable, teacher: Teacher) -> ObservationTable:
    """Query every missing cell of the access rows and their one-letter extensions."""
    answers = dict(table.answers)
    for u in list(table.access) + table.extensions(teacher.alphabet):
        for t in table.tests:
            if u + t not in answers:
                answers[u + t] = teacher.expectation(u + t)
    return ObservationTable(table.access, table.tests, answers)


def initial_table(teacher: Teacher) -> ObservationTable:
    return fill(ObservationTable(), teacher)


def unclosed_extension(table: ObservationTable, teacher: Teacher) -> Optional[Word]:
    """Shortest, then lexicographically least, extension u·a matching no access row."""
    order = {letter: i for i, letter in enumerate(teacher.alphabet.letters)}
    candidates = sorted(table.extensions(teacher.alphabet), key=lambda w: (len(w), [order[x] for x in w]))
    for word in candidates:
        if table.find_row(word) is None:
            return word
    return None


def is_separable(table: ObservationTable) -> bool:
    rows = [table.row(u) for u in table.access]
    return len(set(rows)) == len(rows)


def is_closed(table: ObservationTable, teacher: Teacher) -> bool:
    return unclosed_extension(table, teacher) is None


def close_table(table: ObservationTable, teacher: Teacher) -> ObservationTable:
    table = fill(table, teacher)
    while True:
        missing = unclosed_extension(table, teacher)
        if missing is None:
            break
        logger.debug("closing table with access word %r", missing)
        table = fill(ObservationTable(table.access + (missing,), table.tests, table.answers), teacher)
    if not is_separable(table):
        raise InvariantError("closed table lost separability")
    return table


def build_hypothesis(table: ObservationTable, teacher: Teacher) -> Automaton:
    """One state per access row; bottom SCC transitions carry the row's ε-expectation."""
    if not is_separable(table):
        raise InvariantError("hypothesis requested from a non-separable table")
    alphabet = teacher.alphabet
    delta = []
    for u in table.access:
        row = []
        for a in alphabet.letters:
            target = table.find_row(u + (a,))
            if target is None:
                raise InvariantError("hypothesis requested from a non-closed table")
            row.append(target)
        delta.append(tuple(row))

    shape = Automaton(alphabet, len(table.access), 0, tuple(delta), tuple((Fraction(0),) * len(alphabet) for _ in delta))
    decomposition = scc_decompose(shape)
    epsilon_column = table.tests.index(())
    weights = []
    for q, u in enumerate(table.access):
        if decomposition.is_bottom[decomposition.component_of[q]]:
            weights.append((table.row(u)[epsilon_column],) * len(alphabet))
        else:
            weights.append((Fraction(0),) * len(alphabet))
    return shape.with_weights(weights)


def process_counterexample(table: ObservationTable, teacher: Teacher, counterexample: WordLike, hypothesis: Automaton) -> ObservationTable:
    """Split the counterexample at the first prefix where the access-word substitution changes the answer.

    With α_i = E(L | acc(h(u[:i])) · u[i:]), the first i with α_i ≠ α_{i+1}
    yields the new access word acc(h(u[:i]))·u[i] and the new test word
    u[i+1:]. If the scan finds no change, the counterexample is first
    extended by the shortest suffix that exposes one.
    """
    alphabet = teacher.alphabet
    word = alphabet.word(counterexample)
    if teacher.expectation(word) == conditional_expectation(hypothesis, word):
        raise InputError(f"{alphabet.format_word(word)!r} is not a counterexample")

    split = _divergence(table, teacher, hypothesis, word)
    if split is None:
        word = word + _exposing_suffix(table, teacher, hypothesis, word)
        split = _divergence(table, teacher, hypothesis, word)
        if split is None:
            raise InvariantError("extended counterexample still shows no divergence")

    i = split
    new_access = table.access[hypothesis.run(word[:i])] + (word[i],)
    new_test = word[i + 1:]
    logger.debug("counterexample %r adds access %r and test %r", word, new_access, new_test)
    tests = table.tests if new_test in table.tests else table.tests + (new_test,)
    return fill(ObservationTable(table.access + (new_access,), tests, table.answers), teacher)


def _substituted(table: ObservationTable, hypothesis: Automaton, word: Word, i: int) -> Word:
    return table.access[hypothesis.run(word[:i])] + word[i:]


def _divergence(table: ObservationTable, teacher: Teacher, hypothesis: Automaton, word: Word) -> Optional[int]:
    previous = teacher.expectation(_substituted(table, hypothesis, word, 0))
    for i in range(len(word)):
        current = teacher.expectation(_substituted(table, hypothesis, word, i + 1))
        if current != previous:
            return i
        previous = current
    return None


def _exposing_suffix(table: ObservationTable, teacher: Teacher, hypothesis: Automaton, word: Word) -> Word:
    """Shortest z with E(L | u z) ≠ E(L | acc(h(u z))), searched breadth first."""
    seen = set()
    queue = deque([()])
    while queue and len(seen) <= settings.SEPARATION_SEARCH_LIMIT:
        z = queue.popleft()
        state = hypothesis.run(word + z)
        answer = teacher.expectation(word + z)
        if answer != teacher.expectation(table.access[state]):
            return z
        if (state, answer) in seen:
            continue
        seen.add((state, answer))
        for a in teacher.alphabet.letters:
            queue.append(z + (a,))
    raise InvariantError("no suffix exposes the counterexample")
