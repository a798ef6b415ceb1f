# ==================== LASSO WORDS ====================
# File: core/lasso.py

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from core.alphabet import Alphabet, Word, WordLike
from core.automaton import Automaton
from core.errors import InputError


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word prefix · period^ω."""

    prefix: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InputError("lasso period must be non-empty")

    @classmethod
    def parse(cls, alphabet: Alphabet, prefix: WordLike, period: WordLike) -> "Lasso":
        return cls(alphabet.word(prefix), alphabet.word(period))

    def __len__(self) -> int:
        return len(self.prefix) + len(self.period)

    def unfold(self, length: int) -> Word:
        """The first ``length`` letters of the infinite word."""
        letters = list(self.prefix[:length])
        while len(letters) < length:
            letters.extend(self.period[: length - len(letters)])
        return tuple(letters)


def _primitive_root(period: Word) -> Word:
    size = len(period)
    for d in range(1, size + 1):
        if size % d == 0 and period[:d] * (size // d) == period:
            return period[:d]
    return period


def canonical_lasso(lasso: Lasso) -> Lasso:
    """Shortest period, then shortest prefix; equal forms iff equal infinite words."""
    prefix = lasso.prefix
    period = _primitive_root(lasso.period)
    # rotating the period right absorbs the prefix's last letter into the loop
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1:] + period[:-1]
    return Lasso(prefix, period)


def lasso_cycle(automaton: Automaton, lasso: Lasso) -> List[Tuple[int, int]]:
    """Transitions ``(state, letter index)`` of the cycle the run eventually repeats.

    Detection runs on period boundaries, so it stops within ``state_count``
    periods.
    """
    alphabet = automaton.alphabet
    state = automaton.run_indices(alphabet.indices(lasso.prefix))
    period = alphabet.indices(lasso.period)

    boundary_index = {}
    walked: List[Tuple[int, int]] = []
    while state not in boundary_index:
        boundary_index[state] = len(walked)
        for i in period:
            walked.append((state, i))
            state = automaton.delta[state][i]
    return walked[boundary_index[state]:]


def eval_lasso(automaton: Automaton, lasso: Lasso) -> Fraction:
    """LimAvg value of prefix · period^ω."""
    cycle = lasso_cycle(automaton, lasso)
    total = sum((automaton.weights[q][i] for q, i in cycle), Fraction(0))
    return total / len(cycle)
