# ==================== CANONICAL MINIMIZATION ====================
# File: analysis/minimize.py

import logging
from fractions import Fraction
from typing import Dict, List

from networkx.utils import UnionFind

from core.automaton import Automaton
from analysis.contraction import contract_bottom_sccs
from analysis.product import ProductChain
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


def almost_equal_classes(automaton: Automaton) -> List[List[int]]:
    """Partition of the states by E(|A_q - A_q'|) = 0 under the uniform measure."""
    chain = MarkovChain.uniform(automaton.alphabet)
    roots = [(q, r, chain.initial) for q in automaton.states for r in automaton.states if q < r]
    classes = UnionFind(automaton.states)
    if roots:
        product = ProductChain((automaton, automaton), chain, roots=roots)
        gaps = product.gap_values(0, 1)
        for q, r, s in roots:
            if gaps[product.index[(q, r, s)]] == 0:
                classes.union(q, r)
    return sorted(sorted(members) for members in classes.to_sets())


def minimize_almost_exact(automaton: Automaton) -> Automaton:
    """Minimal automaton almost equivalent to the input (uniform measure).

    Bottom SCCs are contracted first, so a class holding a contracted sink
    becomes a sink carrying its value; every other transition weighs 0.
    """
    contracted = contract_bottom_sccs(automaton)
    classes = almost_equal_classes(contracted)
    class_of: Dict[int, int] = {q: k for k, members in enumerate(classes) for q in members}

    size = len(contracted.alphabet)
    delta, weights = [], []
    for k, members in enumerate(classes):
        sinks = [q for q in members if all(t == q for t in contracted.delta[q])]
        if sinks:
            delta.append(tuple([k] * size))
            weights.append(tuple(contracted.weights[sinks[0]]))
        else:
            representative = members[0]
            delta.append(tuple(class_of[t] for t in contracted.delta[representative]))
            weights.append(tuple([Fraction(0)] * size))

    quotient = Automaton(contracted.alphabet, len(classes), class_of[contracted.initial], tuple(delta), tuple(weights))
    result = quotient.trimmed()
    logger.debug("minimized %d states to %d", automaton.state_count, result.state_count)
    return result
