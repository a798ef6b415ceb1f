# ==================== INFIX CHARACTERIZATION GADGET ====================
# File: gadgets/characterization.py

"""Two automata that only differ after the first occurrence of ``a^n b``.

A finite sample separates them only if one of its words contains that infix
followed by a letter, which a random word of moderate length rarely does.
"""

from fractions import Fraction
from typing import Tuple

from core.alphabet import Alphabet, Word, WordLike
from core.automaton import Automaton
from core.errors import InputError
from measures.sample import LabeledExample

AB = Alphabet.of("ab")


def _gadget(n: int, after_a: int, after_b: int) -> Automaton:
    # counters 0..n (n means "at least n a's"), then r, then the two loops
    r, loop_a, loop_b = n + 1, n + 2, n + 3
    rows = []
    for k in range(n):
        rows.append((k, "a", k + 1, 0))
        rows.append((k, "b", 0, 0))
    rows += [
        (n, "a", n, 0),
        (n, "b", r, 0),
        (r, "a", loop_a, after_a),
        (r, "b", loop_b, after_b),
    ]
    for letter in "ab":
        rows.append((loop_a, letter, loop_a, after_a))
        rows.append((loop_b, letter, loop_b, after_b))
    return Automaton.build(AB, n + 4, rows)


def gadget_characterization(n: int) -> Tuple[Automaton, Automaton]:
    """Aₙ (1 after ``a^n b a``, -1 after ``a^n b b``) and Āₙ with the two weights swapped."""
    if n < 1:
        raise InputError("n must be at least 1")
    return _gadget(n, 1, -1), _gadget(n, -1, 1)


def contains_decided_infix(word: WordLike, n: int) -> bool:
    """Whether ``a^n b`` occurs followed by at least one more letter."""
    text = "".join(AB.word(word))
    position = text.find("a" * n + "b")
    return position != -1 and position + n + 1 < len(text)


def example_word(example: LabeledExample, n: int) -> Word:
    """A finite word long enough to decide the infix for the example."""
    if example.v is None:
        return example.u
    return example.lasso.unfold(len(example.u) + len(example.v) + n + 2)


def distinguishing_bound(total_length: int, n: int) -> Fraction:
    """‖S‖ / 2ⁿ capped at 1."""
    if total_length < 0 or n < 1:
        raise InputError("need a non-negative total length and n >= 1")
    return min(Fraction(1), Fraction(total_length, 2 ** n))
