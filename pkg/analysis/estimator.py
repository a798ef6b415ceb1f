# ==================== MONTE-CARLO ESTIMATOR ====================
# File: analysis/estimator.py

from fractions import Fraction
from typing import Callable

import numpy as np

from core.alphabet import Alphabet, Word, WordLike
from core.automaton import Automaton, partial_average
from core.errors import InputError

BlackBox = Callable[[Word], Fraction]


def automaton_blackbox(automaton: Automaton) -> BlackBox:
    return lambda word: partial_average(automaton, word)


def estimate_conditional_expectation(
    blackbox: BlackBox,
    alphabet: Alphabet,
    word: WordLike,
    k: int,
    rng: np.random.Generator,
) -> Fraction:
    """Mean of the partial averages of u·v_1, ..., u·v_k with |v_i| = k drawn uniformly.

    Only partial averages are consulted, so ``blackbox`` can be any
    finite-word oracle. The result converges to E(L | uΣ^ω) as k grows.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    prefix = alphabet.word(word)
    letters = alphabet.letters
    total = Fraction(0)
    for _ in range(k):
        suffix = tuple(letters[int(i)] for i in rng.integers(0, len(letters), size=k))
        total += Fraction(blackbox(prefix + suffix))
    return total / k
