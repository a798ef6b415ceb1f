# ==================== EXPECTATIONS ====================
# File: analysis/expectation.py

from fractions import Fraction
from typing import Dict, List, Optional

from core.alphabet import WordLike
from core.automaton import Automaton
from core.errors import DomainError, InputError
from core.scc import scc_decompose
from analysis.product import ProductChain, product_for, resolve_chain
from measures.markov_chain import MarkovChain


def _rooted_product(automaton: Automaton, state: int, chain: MarkovChain) -> ProductChain:
    if state == automaton.initial:
        return product_for((automaton,), chain)
    return product_for((automaton.rooted(state),), chain)


def bottom_scc_value(
    automaton: Automaton,
    component: int,
    measure: Optional[MarkovChain] = None,
    start: Optional[int] = None,
) -> Fraction:
    """Expected LimAvg value of almost every run absorbed in a bottom component.

    ``component`` is an id from :func:`scc_decompose`. Runs start in ``start``
    (the component's smallest member by default) with the chain in its initial
    state. Under a chain measure every product bottom SCC inside the component
    reached from there must agree on the value.
    """
    chain = resolve_chain(automaton.alphabet, measure)
    decomposition = scc_decompose(automaton)
    if not decomposition.is_bottom[component]:
        raise InputError(f"component {component} is not a bottom SCC")
    if start is None:
        start = decomposition.components[component][0]
    product = _rooted_product(automaton, start, chain)
    values = set()
    for slot, node_component in enumerate(product.bottoms):
        some_node = product.scc.components[node_component][0]
        if decomposition.component_of[product.nodes[some_node][0]] == component and product.absorption[0][slot]:
            values.add(product.bottom_values(0)[slot])
    if not values:
        raise InputError(f"component {component} is not reached from state {start}")
    if len(values) != 1:
        raise DomainError(f"bottom component {component} has chain-dependent values {sorted(values)}")
    return values.pop()


def reach_probabilities(automaton: Automaton, state: int, measure: Optional[MarkovChain] = None) -> Dict[int, Fraction]:
    """Absorption probability of every bottom component of the automaton, starting in ``state``."""
    chain = resolve_chain(automaton.alphabet, measure)
    decomposition = scc_decompose(automaton)
    result = {c: Fraction(0) for c in decomposition.bottoms}
    product = _rooted_product(automaton, state, chain)
    for slot, component in enumerate(product.bottoms):
        some_node = product.scc.components[component][0]
        owner = decomposition.component_of[product.nodes[some_node][0]]
        result[owner] = result.get(owner, Fraction(0)) + product.absorption[0][slot]
    return result


def conditional_expectation(automaton: Automaton, word: WordLike = (), measure: Optional[MarkovChain] = None) -> Fraction:
    """E(A | uΣ^ω) under the measure (uniform by default)."""
    chain = resolve_chain(automaton.alphabet, measure)
    letters = automaton.alphabet.indices(word)
    return product_for((automaton,), chain).conditional_value(0, letters)


def expected_value(automaton: Automaton, measure: Optional[MarkovChain] = None) -> Fraction:
    return conditional_expectation(automaton, (), measure)


def value_vector(automaton: Automaton, measure: Optional[MarkovChain] = None) -> List[Fraction]:
    """Expected value from every reachable product node, in product BFS order."""
    chain = resolve_chain(automaton.alphabet, measure)
    return product_for((automaton,), chain).node_values(0)
