# ==================== BOUNDED APPROXIMATION SEARCH ====================
# File: fit/approximate.py

"""Micro-scale search for small ε-approximations of a target automaton.

Complete transition structures with at most ``max_states`` states are
enumerated in canonical numbering. A structure leaves the value of each of
its bottom SCCs free: for the plain distance every bottom SCC independently
takes the weighted median of the target values it meets; for the rigid
distance the values come from an exact linear program over all co-reachable
state pairs.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from config.settings import settings
from core.automaton import Automaton, require_valid
from core.errors import BudgetExhausted, InputError
from core.scc import scc_decompose
from core.simplex import feasible_point
from analysis.product import ProductChain
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)


def _structures(alphabet, max_states: int, counter: List[int], budget: int) -> Iterator[Automaton]:
    sigma = len(alphabet)
    delta: List[List[Optional[int]]] = [[None] * sigma for _ in range(max_states)]
    used = [1]

    def walk(position: int) -> Iterator[Automaton]:
        q, i = divmod(position, sigma)
        if q >= used[0]:
            rows = tuple(tuple(delta[s]) for s in range(used[0]))
            zeros = tuple((Fraction(0),) * sigma for _ in range(used[0]))
            yield Automaton(alphabet, used[0], 0, rows, zeros)
            return
        for target in range(min(used[0] + 1, max_states)):
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExhausted(budget, counter[0])
            fresh = target == used[0]
            delta[q][i] = target
            if fresh:
                used[0] += 1
            yield from walk(position + 1)
            if fresh:
                used[0] -= 1
            delta[q][i] = None

    yield from walk(0)


def _weighted_median(points: List[Tuple[Fraction, Fraction]]) -> Fraction:
    """Minimiser of Σ p |x - y| over y, for (x, p) points."""
    points = sorted(points)
    half = sum((p for _, p in points), Fraction(0)) / 2
    running = Fraction(0)
    for x, p in points:
        running += p
        if running >= half:
            return x
    return points[-1][0]


def _best_values(target: Automaton, shape: Automaton, epsilon: Fraction, rigid: bool) -> Optional[Dict[int, Fraction]]:
    product = ProductChain((target, shape), MarkovChain.uniform(target.alphabet))
    decomposition = scc_decompose(shape)
    xs = product.bottom_values(0)
    owner = [decomposition.component_of[product.nodes[product.scc.components[c][0]][1]] for c in product.bottoms]

    if not rigid:
        values: Dict[int, Fraction] = {}
        total = Fraction(0)
        for component in set(owner):
            points = [(xs[k], product.absorption[0][k]) for k in range(len(xs)) if owner[k] == component]
            y = _weighted_median([(x, p) for x, p in points if p])
            values[component] = y
            total += sum((p * abs(x - y) for x, p in points), Fraction(0))
        return values if total <= epsilon else None

    inequalities = []
    for k, x in enumerate(xs):
        inequalities.append(({("t", k): Fraction(-1), ("y", owner[k]): Fraction(-1)}, -x))
        inequalities.append(({("t", k): Fraction(-1), ("y", owner[k]): Fraction(1)}, x))
    for row in product.absorption:
        form = {("t", k): p for k, p in enumerate(row) if p}
        if form:
            inequalities.append((form, epsilon))
    solution = feasible_point([], inequalities)
    if solution is None:
        return None
    return {component: solution.get(("y", component), Fraction(0)) for component in set(owner)}


def _weighted(shape: Automaton, values: Dict[int, Fraction]) -> Automaton:
    decomposition = scc_decompose(shape)
    sigma = len(shape.alphabet)
    weights = []
    for q in shape.states:
        component = decomposition.component_of[q]
        weights.append((values.get(component, Fraction(0)),) * sigma if decomposition.is_bottom[component] else (Fraction(0),) * sigma)
    return shape.with_weights(weights)


def enumerate_approximations(
    target: Automaton,
    max_states: int,
    epsilon: Fraction,
    rigid: bool = False,
    budget: Optional[int] = None,
) -> List[Automaton]:
    """Every canonical structure with at most ``max_states`` states that ε-approximates the target."""
    require_valid(target)
    if max_states < 1:
        raise InputError("max_states must be at least 1")
    epsilon = Fraction(epsilon)
    counter = [0]
    found = []
    for shape in _structures(target.alphabet, max_states, counter, settings.APPROX_NODE_BUDGET if budget is None else budget):
        values = _best_values(target, shape, epsilon, rigid)
        if values is not None:
            found.append(_weighted(shape, values))
    logger.debug("%d approximations among %d search nodes", len(found), counter[0])
    return found


def approximate_bounded(
    target: Automaton,
    max_states: int,
    epsilon: Fraction,
    rigid: bool = False,
    budget: Optional[int] = None,
) -> Union[Automaton, None, BudgetExhausted]:
    """First ε-approximation (rigid if asked) with at most ``max_states`` states."""
    require_valid(target)
    epsilon = Fraction(epsilon)
    counter = [0]
    try:
        for shape in _structures(target.alphabet, max_states, counter, settings.APPROX_NODE_BUDGET if budget is None else budget):
            values = _best_values(target, shape, epsilon, rigid)
            if values is not None:
                return _weighted(shape, values)
    except BudgetExhausted as exhausted:
        return exhausted
    return None
