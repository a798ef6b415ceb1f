# ==================== AUTOMATA x CHAIN PRODUCT ====================
# File: analysis/product.py

"""Synchronous product of deterministic automata with a Markov chain.

Every analysis reduces to this product: nodes are ``(q_1, ..., q_k, s)``
tuples reachable through positive-probability edges, explored breadth first
with letters in index order (so first-discovery words are shortest, then
lexicographically least).
"""

import logging
from collections import deque
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from core.automaton import Automaton
from core.errors import DomainError, InputError, InvariantError
from core.linear_algebra import ZERO, LinearForm, solve_square
from core.scc import SccDecomposition, decompose_graph, successors_graph
from measures.markov_chain import MarkovChain

logger = logging.getLogger(__name__)

Node = Tuple[int, ...]


class ProductChain:
    def __init__(self, automata: Sequence[Automaton], chain: MarkovChain, roots: Optional[Sequence[Node]] = None):
        self.automata = tuple(automata)
        self.chain = chain
        for automaton in self.automata:
            if automaton.alphabet != chain.alphabet:
                raise InputError(f"alphabet mismatch: {list(automaton.alphabet)} vs {list(chain.alphabet)}")
        if roots is None:
            roots = [tuple(a.initial for a in self.automata) + (chain.initial,)]

        self.nodes: List[Node] = []
        self.index: Dict[Node, int] = {}
        self.parent: List[Optional[Tuple[int, int]]] = []
        self.edges: List[Tuple[Tuple[int, int, Fraction], ...]] = []
        self._bottom_values: Dict[int, List[Fraction]] = {}
        self._stationary: Dict[int, Dict[int, Fraction]] = {}

        queue = deque()
        for root in roots:
            if root not in self.index:
                self._add(root, None)
                queue.append(root)
        while queue:
            node = queue.popleft()
            row = []
            states, s = node[:-1], node[-1]
            for i, t, p in chain.out_edges[s]:
                target = tuple(a.delta[q][i] for a, q in zip(self.automata, states)) + (t,)
                if target not in self.index:
                    self._add(target, (self.index[node], i))
                    queue.append(target)
                row.append((i, self.index[target], p))
            self.edges.append(tuple(row))
        logger.debug("product of %d automata has %d nodes", len(self.automata), len(self.nodes))

    def _add(self, node: Node, parent: Optional[Tuple[int, int]]) -> None:
        self.index[node] = len(self.nodes)
        self.nodes.append(node)
        self.parent.append(parent)

    def __len__(self) -> int:
        return len(self.nodes)

    # ----- structure -----

    @cached_property
    def transition(self) -> List[Dict[int, Fraction]]:
        rows = []
        for row in self.edges:
            merged: Dict[int, Fraction] = {}
            for _, target, p in row:
                merged[target] = merged.get(target, ZERO) + p
            rows.append(merged)
        return rows

    @cached_property
    def scc(self) -> SccDecomposition:
        graph = successors_graph(len(self.nodes), [list(row) for row in self.transition])
        return decompose_graph(graph)

    @cached_property
    def bottoms(self) -> List[int]:
        """Component ids of the bottom SCCs, in component order."""
        return self.scc.bottoms

    def witness(self, node_index: int) -> Tuple[int, ...]:
        """Letter indices of the first-discovery word reaching a node from its root."""
        letters = []
        while self.parent[node_index] is not None:
            node_index, i = self.parent[node_index]
            letters.append(i)
        return tuple(reversed(letters))

    # ----- stationary values -----

    def stationary(self, component: int) -> Dict[int, Fraction]:
        """Exact stationary distribution of a bottom component (πP = π, Σπ = 1)."""
        if component in self._stationary:
            return self._stationary[component]
        members = self.scc.components[component]
        position = {node: k for k, node in enumerate(members)}
        size = len(members)
        matrix = [[ZERO] * size for _ in range(size)]
        rhs = [[ZERO] for _ in range(size)]
        for source in members:
            for target, p in self.transition[source].items():
                if target not in position:
                    raise InvariantError("stationary distribution requested for a non-bottom component")
                col = position[target]
                if col != 0:
                    matrix[col][position[source]] += p
        for k in range(1, size):
            matrix[k][k] -= 1
        matrix[0] = [Fraction(1)] * size
        rhs[0][0] = Fraction(1)
        solution = solve_square(matrix, rhs)
        self._stationary[component] = {node: solution[k][0] for node, k in position.items()}
        return self._stationary[component]

    def component_form(self, component: int, factor: int) -> LinearForm:
        """Mean payoff of a bottom component as a linear form in the factor's weights ``(q, i)``."""
        form: LinearForm = {}
        for node, mass in self.stationary(component).items():
            q = self.nodes[node][factor]
            for i, _, p in self.edges[node]:
                key = (q, i)
                form[key] = form.get(key, ZERO) + mass * p
        return {key: coef for key, coef in form.items() if coef != 0}

    def bottom_values(self, factor: int) -> List[Fraction]:
        """Value of every bottom component (in ``bottoms`` order) for one factor."""
        if factor not in self._bottom_values:
            self._bottom_values[factor] = [self.component_value(c, factor) for c in self.bottoms]
        return self._bottom_values[factor]

    def component_value(self, component: int, factor: int) -> Fraction:
        weights = self.automata[factor].weights
        total = ZERO
        for node, mass in self.stationary(component).items():
            q = self.nodes[node][factor]
            total += mass * sum((p * weights[q][i] for i, _, p in self.edges[node]), ZERO)
        return total

    # ----- absorption -----

    @cached_property
    def absorption(self) -> List[List[Fraction]]:
        """Per node, the probability of ending in each bottom component (``bottoms`` order)."""
        bottom_slot = {c: k for k, c in enumerate(self.bottoms)}
        comp = self.scc.component_of
        width = len(self.bottoms)
        result: List[List[Fraction]] = [[ZERO] * width for _ in self.nodes]

        transient = [n for n in range(len(self.nodes)) if comp[n] not in bottom_slot]
        for n in range(len(self.nodes)):
            if comp[n] in bottom_slot:
                result[n][bottom_slot[comp[n]]] = Fraction(1)
        if not transient:
            return result

        position = {n: k for k, n in enumerate(transient)}
        size = len(transient)
        matrix = [[ZERO] * size for _ in range(size)]
        rhs = [[ZERO] * width for _ in range(size)]
        for n in transient:
            row = position[n]
            matrix[row][row] += 1
            for target, p in self.transition[n].items():
                if target in position:
                    matrix[row][position[target]] -= p
                else:
                    rhs[row][bottom_slot[comp[target]]] += p
        solution = solve_square(matrix, rhs)
        for n in transient:
            result[n] = solution[position[n]]
        return result

    def node_values(self, factor: int) -> List[Fraction]:
        """Expected LimAvg value of the factor from every node."""
        values = self.bottom_values(factor)
        return [sum((p * v for p, v in zip(row, values)), ZERO) for row in self.absorption]

    def gap_values(self, left: int = 0, right: int = 1) -> List[Fraction]:
        """E(|left - right|) from every node."""
        gaps = [abs(x - y) for x, y in zip(self.bottom_values(left), self.bottom_values(right))]
        return [sum((p * g for p, g in zip(row, gaps)), ZERO) for row in self.absorption]

    # ----- words -----

    def word_distribution(self, letters: Sequence[int], root: int = 0) -> Dict[int, Fraction]:
        """Joint probability of emitting the word and sitting in each node."""
        current = {root: Fraction(1)}
        for i in letters:
            following: Dict[int, Fraction] = {}
            for node, mass in current.items():
                for letter, target, p in self.edges[node]:
                    if letter == i:
                        following[target] = following.get(target, ZERO) + mass * p
            current = following
        return current

    def conditional_value(self, factor: int, letters: Sequence[int]) -> Fraction:
        distribution = self.word_distribution(letters)
        total = sum(distribution.values(), ZERO)
        if total == 0:
            raise DomainError("conditioning on a cylinder of probability 0")
        values = self.node_values(factor)
        return sum((mass * values[n] for n, mass in distribution.items()), ZERO) / total


def resolve_chain(alphabet, measure: Optional[MarkovChain]) -> MarkovChain:
    if measure is None:
        return MarkovChain.uniform(alphabet)
    if measure.alphabet != alphabet:
        raise InputError(f"measure alphabet {list(measure.alphabet)} differs from {list(alphabet)}")
    return measure


@lru_cache(maxsize=256)
def product_for(automata: Tuple[Automaton, ...], chain: MarkovChain) -> ProductChain:
    """Cached product rooted at the initial states."""
    return ProductChain(automata, chain)
