# ==================== DISTANCE AND EQUIVALENCE ====================
# File: analysis/distance.py

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from config.settings import settings
from core.alphabet import Word
from core.automaton import Automaton, require_same_alphabet
from core.errors import InvariantError
from core.scc import scc_decompose
from analysis.product import ProductChain, product_for, resolve_chain
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairMass:
    """Probability of ending in bottom SCC ``left`` of A and ``right`` of B."""

    left: int
    right: int
    probability: Fraction
    left_value: Fraction
    right_value: Fraction


@dataclass(frozen=True)
class DistanceReport:
    pairs: Tuple[PairMass, ...]
    total: Fraction

    @property
    def probability_mass(self) -> Fraction:
        return sum((pair.probability for pair in self.pairs), Fraction(0))


@dataclass(frozen=True)
class Equivalent:
    pass


@dataclass(frozen=True)
class Counterexample:
    word: Word
    left_value: Fraction = field(default=Fraction(0))
    right_value: Fraction = field(default=Fraction(0))


def distance(a: Automaton, b: Automaton, measure: Optional[MarkovChain] = None) -> DistanceReport:
    """E(|A - B|) with its decomposition over pairs of bottom SCCs."""
    require_same_alphabet(a, b)
    chain = resolve_chain(a.alphabet, measure)
    product = product_for((a, b), chain)
    left_scc, right_scc = scc_decompose(a), scc_decompose(b)

    xs, ys = product.bottom_values(0), product.bottom_values(1)
    masses: Dict[Tuple[int, int, Fraction, Fraction], Fraction] = {}
    for slot, component in enumerate(product.bottoms):
        node = product.nodes[product.scc.components[component][0]]
        left, right = left_scc.component_of[node[0]], right_scc.component_of[node[1]]
        if chain.is_uniform and not (left_scc.is_bottom[left] and right_scc.is_bottom[right]):
            raise InvariantError("product bottom SCC does not project onto factor bottom SCCs")
        key = (left, right, xs[slot], ys[slot])
        masses[key] = masses.get(key, Fraction(0)) + product.absorption[0][slot]

    pairs = tuple(PairMass(l, r, p, x, y) for (l, r, x, y), p in sorted(masses.items(), key=lambda kv: kv[0][:2]) if p)
    total = sum((pair.probability * abs(pair.left_value - pair.right_value) for pair in pairs), Fraction(0))
    report = DistanceReport(pairs, total)
    if report.probability_mass != 1:
        raise InvariantError(f"bottom SCC probabilities sum to {report.probability_mass}")
    return report


def approximates(a: Automaton, b: Automaton, epsilon: Fraction, measure: Optional[MarkovChain] = None) -> bool:
    """Plain ε-approximation: E(|A - B|) ≤ ε."""
    return distance(a, b, measure).total <= Fraction(epsilon)


def separating_word(a: Automaton, b: Automaton, epsilon: Fraction = Fraction(0), measure: Optional[MarkovChain] = None) -> Optional[Counterexample]:
    """Shortest, then lexicographically least, word whose run sits in product bottom SCCs with gap > ε.

    Under a chain measure the search state also tracks the normalised chain
    distribution; it is bounded by ``SEPARATION_SEARCH_LIMIT`` configurations.
    """
    require_same_alphabet(a, b)
    chain = resolve_chain(a.alphabet, measure)
    product = product_for((a, b), chain)
    epsilon = Fraction(epsilon)
    left_values, right_values = product.node_values(0), product.node_values(1)
    bottom_components = set(product.bottoms)
    component_of = product.scc.component_of

    def verdict(distribution: Dict[int, Fraction]) -> Optional[Tuple[Fraction, Fraction]]:
        if any(component_of[n] not in bottom_components for n in distribution):
            return None
        total = sum(distribution.values(), Fraction(0))
        x = sum((m * left_values[n] for n, m in distribution.items()), Fraction(0)) / total
        y = sum((m * right_values[n] for n, m in distribution.items()), Fraction(0)) / total
        return (x, y) if abs(x - y) > epsilon else None

    if chain.state_count == 1:
        for n in range(len(product)):
            found = verdict({n: Fraction(1)})
            if found:
                return Counterexample(a.alphabet.letters_of(product.witness(n)), *found)
        return None

    start = _normalised({0: Fraction(1)})
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        config, letters = queue.popleft()
        found = verdict(dict(config))
        if found:
            return Counterexample(a.alphabet.letters_of(letters), *found)
        if len(seen) > settings.SEPARATION_SEARCH_LIMIT:
            logger.warning("separating word search stopped after %d configurations", len(seen))
            return None
        for i in range(len(a.alphabet)):
            following = _step(product, dict(config), i)
            if not following:
                continue
            key = _normalised(following)
            if key not in seen:
                seen.add(key)
                queue.append((key, letters + (i,)))
    return None


def almost_equivalent(a: Automaton, b: Automaton, measure: Optional[MarkovChain] = None) -> Union[Equivalent, Counterexample]:
    report = distance(a, b, measure)
    if report.total == 0:
        return Equivalent()
    witness = separating_word(a, b, Fraction(0), measure)
    if witness is None:
        raise InvariantError("positive distance but no separating word was found")
    if witness.left_value == witness.right_value:
        raise InvariantError("separating word does not separate expectations")
    return witness


def _step(product: ProductChain, distribution: Dict[int, Fraction], letter: int) -> Dict[int, Fraction]:
    following: Dict[int, Fraction] = {}
    for node, mass in distribution.items():
        for i, target, p in product.edges[node]:
            if i == letter:
                following[target] = following.get(target, Fraction(0)) + mass * p
    return following


def _normalised(distribution: Dict[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    total = sum(distribution.values(), Fraction(0))
    return tuple(sorted((n, m / total) for n, m in distribution.items() if m))
