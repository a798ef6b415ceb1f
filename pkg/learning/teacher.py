# ==================== TEACHER ====================
# File: learning/teacher.py

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Union

from core.alphabet import Alphabet, WordLike
from core.automaton import Automaton, require_same_alphabet, require_valid
from core.errors import InvariantError
from analysis.distance import Counterexample, Equivalent, distance, separating_word
from analysis.product import product_for
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


@dataclass
class QueryLog:
    expectation_queries: int = 0
    consistency_queries: int = 0
    total_length: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "expectation_queries": self.expectation_queries,
            "consistency_queries": self.consistency_queries,
            "total_length": self.total_length,
        }


@dataclass
class Teacher:
    """Answers expectation and ε-consistency queries about a hidden automaton.

    Answers are exact and deterministic. The log is updated under a lock so
    the teacher can serve concurrent readers.
    """

    hidden: Automaton
    record_trace: bool = False
    log: QueryLog = field(default_factory=QueryLog)
    trace: List[Dict[str, Any]] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        require_valid(self.hidden)
        self._product = product_for((self.hidden,), MarkovChain.uniform(self.hidden.alphabet))
        self._values = self._product.node_values(0)

    @property
    def alphabet(self) -> Alphabet:
        return self.hidden.alphabet

    def expectation(self, word: WordLike) -> Fraction:
        letters = self.alphabet.indices(word)
        node = self._product.index[(self.hidden.run_indices(letters), 0)]
        answer = self._values[node]
        with self._lock:
            self.log.expectation_queries += 1
            self.log.total_length += len(letters)
            if self.record_trace:
                self.trace.append({"query": "expectation", "word": self.alphabet.format_word(self.alphabet.letters_of(letters)), "answer": str(answer)})
        return answer

    def consistency(self, hypothesis: Automaton, epsilon: Fraction = Fraction(0)) -> Union[Equivalent, Counterexample]:
        require_same_alphabet(self.hidden, hypothesis)
        epsilon = Fraction(epsilon)
        if distance(self.hidden, hypothesis).total <= epsilon:
            answer: Union[Equivalent, Counterexample] = Equivalent()
        else:
            answer = separating_word(self.hidden, hypothesis, epsilon)
            if answer is None:
                raise InvariantError(f"distance exceeds {epsilon} but no separating word was found")
        with self._lock:
            self.log.consistency_queries += 1
            if self.record_trace:
                shown = "YES" if isinstance(answer, Equivalent) else self.alphabet.format_word(answer.word)
                self.trace.append({"query": "consistency", "states": hypothesis.state_count, "epsilon": str(epsilon), "answer": shown})
        logger.debug("consistency query on %d states: %s", hypothesis.state_count, answer)
        return answer

    def snapshot(self, entry: Dict[str, Any]) -> None:
        """Store a learner-side record (table snapshots) in the trace."""
        if self.record_trace:
            with self._lock:
                self.trace.append(entry)


def teacher_expectation(teacher: Teacher, word: WordLike) -> Fraction:
    return teacher.expectation(word)


def teacher_consistency(teacher: Teacher, hypothesis: Automaton, epsilon: Fraction = Fraction(0)) -> Union[Equivalent, Counterexample]:
    return teacher.consistency(hypothesis, epsilon)
