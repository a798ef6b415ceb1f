# ==================== RIGID APPROXIMATION ====================
# File: analysis/rigid.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from core.alphabet import Word
from core.automaton import Automaton, require_same_alphabet
from analysis.product import product_for
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StatePair:
    left: int
    right: int
    witness: Word
    distance: Fraction


@dataclass(frozen=True)
class RigidReport:
    pairs: Tuple[StatePair, ...]
    max_distance: Fraction
    epsilon: Fraction

    @property
    def verdict(self) -> bool:
        return self.max_distance <= self.epsilon


def rigid_check(a: Automaton, b: Automaton, epsilon: Fraction) -> RigidReport:
    """Check sup over u of E(|A - B| given uΣ^ω) against ε.

    The supremum is attained on the co-reachable pair set: two cylinders that
    lead to the same pair of states have the same conditional distance.
    """
    require_same_alphabet(a, b)
    product = product_for((a, b), MarkovChain.uniform(a.alphabet))
    gaps = product.gap_values(0, 1)
    pairs = tuple(
        StatePair(node[0], node[1], a.alphabet.letters_of(product.witness(n)), gaps[n])
        for n, node in enumerate(product.nodes)
    )
    worst = max(pair.distance for pair in pairs)
    logger.debug("rigid check over %d co-reachable pairs, max distance %s", len(pairs), worst)
    return RigidReport(pairs, worst, Fraction(epsilon))
