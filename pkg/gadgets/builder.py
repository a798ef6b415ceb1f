# ==================== TREE-SHAPED GADGET BUILDER ====================
# File: gadgets/builder.py

from fractions import Fraction
from typing import Dict, List, Tuple

from core.alphabet import Alphabet
from core.automaton import Automaton


class GadgetBuilder:
    """Incremental construction of gadgets made of inner nodes and constant sinks.

    Sinks are shared per value. A transition entering a sink carries the
    sink's value, so partial averages along a branch approach the branch value.
    """

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.rows: List[Tuple[int, str, int, Fraction]] = []
        self.count = 0
        self.sinks: Dict[Fraction, int] = {}

    def state(self) -> int:
        self.count += 1
        return self.count - 1

    def sink(self, value) -> int:
        value = Fraction(value)
        if value not in self.sinks:
            q = self.state()
            self.sinks[value] = q
            for letter in self.alphabet:
                self.rows.append((q, letter, q, value))
        return self.sinks[value]

    def edge(self, source: int, letter: str, target: int, weight=0) -> None:
        self.rows.append((source, letter, target, Fraction(weight)))

    def to_sink(self, source: int, letter: str, value) -> None:
        self.edge(source, letter, self.sink(value), value)

    def build(self, initial: int = 0) -> Automaton:
        return Automaton.build(self.alphabet, self.count, self.rows, initial)
