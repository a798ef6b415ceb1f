# ==================== BOTTOM SCC CONTRACTION ====================
# File: analysis/contraction.py

import logging
from fractions import Fraction
from typing import Dict, List, Optional

from core.automaton import Automaton
from core.errors import DomainError
from core.scc import SccDecomposition, scc_decompose
from analysis.expectation import bottom_scc_value
from analysis.product import product_for, resolve_chain
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


def contract_bottom_sccs(automaton: Automaton, measure: Optional[MarkovChain] = None) -> Automaton:
    """Collapse each bottom SCC into one state whose self-loops carry the SCC value.

    All other weights become 0. The result is almost equivalent to the input
    under the given measure only; bottom components the measure never reaches
    keep value 0 and are logged.
    """
    chain = resolve_chain(automaton.alphabet, measure)
    decomposition = scc_decompose(automaton)
    if chain.is_uniform:
        component_values = {c: bottom_scc_value(automaton, c) for c in decomposition.bottoms}
    else:
        component_values = _values_under_chain(automaton, decomposition, chain)

    new_id: Dict[int, int] = {}
    values: Dict[int, Fraction] = {}
    count = 0
    for q in automaton.states:
        component = decomposition.component_of[q]
        if decomposition.is_bottom[component]:
            leader = decomposition.components[component][0]
            if leader == q:
                new_id[q] = count
                values[count] = component_values.get(component, Fraction(0))
                count += 1
            else:
                new_id[q] = new_id[leader]
        else:
            new_id[q] = count
            count += 1

    size = len(automaton.alphabet)
    delta: List[List[int]] = [[0] * size for _ in range(count)]
    weights: List[List[Fraction]] = [[Fraction(0)] * size for _ in range(count)]
    for q in automaton.states:
        target = new_id[q]
        if target in values:
            delta[target] = [target] * size
            weights[target] = [values[target]] * size
        else:
            delta[target] = [new_id[t] for t in automaton.delta[q]]
    return Automaton(automaton.alphabet, count, new_id[automaton.initial], tuple(map(tuple, delta)), tuple(map(tuple, weights)))


def _values_under_chain(automaton: Automaton, decomposition: SccDecomposition, chain: MarkovChain) -> Dict[int, Fraction]:
    product = product_for((automaton,), chain)
    values: Dict[int, Fraction] = {}
    for component, value in zip(product.bottoms, product.bottom_values(0)):
        state = product.nodes[product.scc.components[component][0]][0]
        owner = decomposition.component_of[state]
        if owner in values and values[owner] != value:
            raise DomainError(f"bottom component {owner} has chain-dependent values {values[owner]} and {value}")
        values[owner] = value
    for component in decomposition.bottoms:
        if component not in values:
            logger.warning("bottom component %d is never reached under the measure", component)
    return values
