# ==================== BOUNDED SAMPLE FITTING ====================
# File: fit/search.py

"""Exhaustive search for an automaton with at most n states fitting a sample.

Transition structures are enumerated depth first with canonical numbering
(a fresh target is always the next unused state), so isomorphic structures
are visited once. Weights are never enumerated: for a fixed structure every
example is a linear constraint on them, decided by exact linear feasibility.

U-samples only need the transitions along the example lassos. E-samples
first define the example paths, then complete the rows of every created
state. Partial structures are pruned with the expected value of each
(state, chain state) pair as unknowns: a defined row ties a pair to the
average over its successors and an example fixes its endpoint.
Under a single-state measure the value of an example is the value of the
state it ends in, so two examples ending together must agree, endpoints
first try states already carrying their value, and a state whose example
letters all loop back is closed by looping its free letters as well.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config.settings import settings
from core.automaton import Automaton
from core.errors import BudgetExhausted, DomainError, InputError, InvariantError
from core.lasso import canonical_lasso
from core.linear_algebra import Equation, LinearForm, add_forms
from core.simplex import feasible_point
from analysis.product import ProductChain, resolve_chain
from measures.consistency import require_consistent
from measures.markov_chain import MarkovChain
from measures.sample import Sample
from fit.check import example_value

logger = logging.getLogger(__name__)

FitOutcome = Union[Automaton, None, BudgetExhausted]


@dataclass(frozen=True)
class FitProblem:
    sample: Sample
    max_states: int
    measure: Optional[MarkovChain] = None
    slack: Optional[Fraction] = None
    budget: Optional[int] = None

    def __post_init__(self):
        if self.max_states < 1:
            raise InputError("max_states must be at least 1")
        if self.slack is not None:
            object.__setattr__(self, "slack", Fraction(self.slack))
            if self.slack < 0:
                raise InputError("slack must be non-negative")
        if self.measure is not None and not self.sample.is_expectation:
            raise InputError("a measure only applies to E-samples")


def fit_bounded(problem: FitProblem, jobs: Optional[int] = None) -> FitOutcome:
    """First fitting automaton in enumeration order, ``None``, or the exhausted budget.

    With several ``jobs`` the subtrees below the first decision are searched
    concurrently, each with the full node budget. The earliest subtree with
    a verdict decides, so the automaton found does not depend on ``jobs``.
    """
    require_consistent(problem.sample)
    jobs = max(1, settings.FIT_JOBS if jobs is None else jobs)
    if jobs == 1:
        return _run(_searcher(problem))
    try:
        outcome = _run(_searcher(problem, _LIST_BRANCHES))
    except _Branches as branches:
        targets = branches.targets
    else:
        return outcome
    logger.info("fit search split into %d subtrees over %d workers", len(targets), jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run, _searcher(problem, target)) for target in targets]
        outcomes = [future.result() for future in futures]
    return next((outcome for outcome in outcomes if outcome is not None), None)


def _searcher(problem: FitProblem, first: Optional[int] = None) -> "_Search":
    if problem.sample.is_expectation:
        return _ExpectationSearch(problem, first)
    return _LassoSearch(problem, first)


def _run(search: "_Search") -> FitOutcome:
    try:
        result = search.run()
    except BudgetExhausted as exhausted:
        logger.info("fit search stopped after %d nodes", exhausted.explored)
        return exhausted
    logger.info("fit search explored %d nodes: %s", search.explored, "found" if result else "none")
    return result


_LIST_BRANCHES = -1


class _Branches(Exception):
    """Raised at the first decision when only its targets were asked for."""

    def __init__(self, targets: List[int]):
        super().__init__(targets)
        self.targets = targets


def _constraints(pairs: Sequence[Tuple[LinearForm, Fraction]], slack: Optional[Fraction]) -> Tuple[List[Equation], List[Equation]]:
    """Equalities ``form == x`` or, with slack, two inequalities ``|form - x| <= slack``."""
    if slack is None:
        return list(pairs), []
    inequalities = []
    for form, x in pairs:
        inequalities.append((form, x + slack))
        inequalities.append(({k: -c for k, c in form.items()}, slack - x))
    return [], inequalities


class _Search:
    def __init__(self, problem: FitProblem, first: Optional[int] = None):
        self.problem = problem
        # target forced at the first decision, if any
        self.first = first
        self.alphabet = problem.sample.alphabet
        self.sigma = len(self.alphabet)
        self.n = problem.max_states
        self.budget = settings.FIT_NODE_BUDGET if problem.budget is None else problem.budget
        self.delta: List[List[Optional[int]]] = [[None] * self.sigma for _ in range(self.n)]
        self.used = 1
        self.explored = 0

    def _tick(self) -> None:
        self.explored += 1
        if self.explored > self.budget:
            raise BudgetExhausted(self.budget, self.explored)

    def _targets(self, floor: int = 0) -> range:
        return range(floor, min(self.used + 1, self.n))

    def _branch(self, targets: Sequence[int]) -> Sequence[int]:
        if self.first is None:
            return targets
        first, self.first = self.first, None
        if first == _LIST_BRANCHES:
            raise _Branches(list(targets))
        return [first] if first in targets else []

    def _assign(self, q: int, i: int, target: int) -> bool:
        """Set a transition; returns whether it opened a fresh state."""
        self.delta[q][i] = target
        if target == self.used:
            self.used += 1
            return True
        return False

    def _unassign(self, q: int, i: int, fresh: bool) -> None:
        self.delta[q][i] = None
        if fresh:
            self.used -= 1

    def _verify(self, automaton: Automaton) -> Automaton:
        slack = self.problem.slack or Fraction(0)
        for example in self.problem.sample.examples:
            if abs(example_value(automaton, example, self.problem.measure) - example.value) > slack:
                raise InvariantError("fitted automaton misses an example")
        return automaton


class _LassoSearch(_Search):
    def __init__(self, problem: FitProblem, first: Optional[int] = None):
        super().__init__(problem, first)
        seen = {}
        for example in problem.sample.examples:
            lasso = canonical_lasso(example.lasso)
            seen.setdefault(lasso, example.value)
        self.examples = [
            (self.alphabet.indices(lasso.prefix), self.alphabet.indices(lasso.period), value)
            for lasso, value in seen.items()
        ]

    def run(self) -> Optional[Automaton]:
        return self._search(0)

    def _scan(self) -> Tuple[Optional[Tuple[int, int]], List[Tuple[LinearForm, Fraction]]]:
        gap = None
        closed = []
        for prefix, period, value in self.examples:
            state, blocked = 0, False
            for i in prefix:
                if self.delta[state][i] is None:
                    blocked = True
                    break
                state = self.delta[state][i]
            if not blocked:
                boundary: Dict[int, int] = {}
                walked: List[Tuple[int, int]] = []
                while state not in boundary and not blocked:
                    boundary[state] = len(walked)
                    for i in period:
                        if self.delta[state][i] is None:
                            blocked = True
                            break
                        walked.append((state, i))
                        state = self.delta[state][i]
                if not blocked:
                    cycle = walked[boundary[state]:]
                    form = add_forms(*({key: Fraction(1, len(cycle))} for key in cycle))
                    closed.append((form, value))
                    continue
            if gap is None:
                gap = (state, i)
        return gap, closed

    def _feasible(self, closed) -> Optional[Dict]:
        equalities, inequalities = _constraints(closed, self.problem.slack)
        return feasible_point(equalities, inequalities)

    def _search(self, known: int) -> Optional[Automaton]:
        gap, closed = self._scan()
        if len(closed) > known or gap is None:
            solution = self._feasible(closed)
            if solution is None:
                return None
            if gap is None:
                return self._complete(solution)
        q, i = gap
        for target in self._branch(self._targets()):
            self._tick()
            fresh = self._assign(q, i, target)
            found = self._search(len(closed))
            if found is not None:
                return found
            self._unassign(q, i, fresh)
        return None

    def _complete(self, solution: Dict) -> Automaton:
        delta = [tuple(q if t is None else t for t in self.delta[q]) for q in range(self.used)]
        weights = [tuple(solution.get((q, i), Fraction(0)) for i in range(self.sigma)) for q in range(self.used)]
        return self._verify(Automaton(self.alphabet, self.used, 0, tuple(delta), tuple(weights)))


class _ExpectationSearch(_Search):
    def __init__(self, problem: FitProblem, first: Optional[int] = None):
        super().__init__(problem, first)
        self.chain = resolve_chain(self.alphabet, problem.measure)
        self.symmetric = self.chain.is_uniform
        # with one chain state, E(A | u) is the value of the state u reaches
        self.pointwise = self.chain.state_count == 1
        labels: Dict[Tuple[int, ...], Fraction] = {}
        for example in problem.sample.examples:
            labels.setdefault(self.alphabet.indices(example.u), example.value)
        self.examples = []
        for word, value in labels.items():
            weights = self.chain.state_weights(self.alphabet.letters_of(word))
            if sum(weights) == 0:
                raise DomainError(f"example {self.alphabet.format_word(self.alphabet.letters_of(word))!r} has probability 0")
            self.examples.append((word, value, weights))
        self.tolerance = 2 * (problem.slack or Fraction(0))
        # transitions fixed while walking example words
        self.pinned = [[False] * self.sigma for _ in range(self.n)]
        # lowest target allowed for the next free letter of each row (letter symmetry)
        self.floor = [0] * self.n

    def run(self) -> Optional[Automaton]:
        return self._search()

    def _walk(self, word: Sequence[int]) -> Optional[int]:
        state = 0
        for i in word:
            state = self.delta[state][i]
            if state is None:
                return None
        return state

    def _gap(self) -> Tuple[Optional[Tuple[int, int]], bool, Optional[Fraction]]:
        """Next undefined transition, whether it lies on an example word, and the label it would end."""
        for word, value, _ in self.examples:
            state = 0
            for position, i in enumerate(word):
                if self.delta[state][i] is None:
                    return (state, i), True, value if position == len(word) - 1 else None
                state = self.delta[state][i]
        for q in range(self.used):
            for i in range(self.sigma):
                if self.delta[q][i] is None:
                    return (q, i), False, None
        return None, False, None

    def _labels(self) -> Tuple[Optional[Dict[int, Fraction]], int]:
        """Labels of the states ending examples (None on a clash) and the number of finished examples."""
        labels: Dict[int, Fraction] = {}
        finished = 0
        for word, value, _ in self.examples:
            state = self._walk(word)
            if state is None:
                continue
            finished += 1
            known = labels.setdefault(state, value)
            if abs(known - value) > self.tolerance:
                return None, finished
        return labels, finished

    def _ordered_targets(self, floor: int, on_path: bool, ending: Optional[Fraction], labels: Dict[int, Fraction]) -> List[int]:
        """Endpoints try states with the same label first; inner letters try unlabeled states already on a path."""
        targets = list(self._targets(floor))
        if not on_path or not self.pointwise:
            return targets

        def hub(t: int) -> bool:
            return t == 0 or any(self.pinned[t])

        def rank(t: int) -> int:
            fresh = t == self.used
            if ending is None:
                if fresh:
                    return 1
                return 0 if t not in labels and hub(t) else 2
            if t in labels:
                return 0 if labels[t] == ending else 4
            if fresh:
                return 2
            return 3 if hub(t) else 1

        return sorted(targets, key=rank)

    def _loops_back(self, q: int) -> bool:
        return all(self.delta[q][i] == q for i in range(self.sigma) if self.pinned[q][i])

    def _value_system(self) -> List[Tuple[LinearForm, Fraction]]:
        pairs: List[Tuple[LinearForm, Fraction]] = []
        for q in range(self.used):
            row = self.delta[q]
            for s in range(self.chain.state_count):
                edges = self.chain.out_edges[s]
                if any(row[i] is None for i, _, _ in edges):
                    continue
                form: LinearForm = {("v", q, s): Fraction(1)}
                for i, t, p in edges:
                    key = ("v", row[i], t)
                    form[key] = form.get(key, Fraction(0)) - p
                pairs.append(({k: c for k, c in form.items() if c}, Fraction(0)))
        return pairs

    def _endpoint_constraints(self) -> List[Tuple[LinearForm, Fraction]]:
        pairs = []
        for word, value, weights in self.examples:
            state = 0
            for i in word:
                state = self.delta[state][i]
                if state is None:
                    break
            if state is None:
                continue
            total = sum(weights, Fraction(0))
            form = {("v", state, s): w / total for s, w in enumerate(weights) if w}
            pairs.append((form, value))
        return pairs

    def _plausible(self) -> bool:
        harmonic = self._value_system()
        endpoints = self._endpoint_constraints()
        equalities, inequalities = _constraints(endpoints, self.problem.slack)
        return feasible_point(harmonic + equalities, inequalities) is not None

    def _consistent(self, q: int, finished: int) -> bool:
        """Label clashes are checked directly; the linear system only when it gained a row or an endpoint."""
        if self.pointwise:
            labels, now = self._labels()
            if labels is None:
                return False
            if now == finished and any(t is None for t in self.delta[q]):
                return True
        return self._plausible()

    def _search(self) -> Optional[Automaton]:
        gap, on_path, ending = self._gap()
        if gap is None:
            return self._solve_weights()
        q, i = gap
        if not on_path and self.pointwise and self._loops_back(q):
            return self._close_as_sink(q)
        floor = 0 if on_path or not self.symmetric else self.floor[q]
        labels, finished = self._labels() if self.pointwise else ({}, 0)
        for target in self._branch(self._ordered_targets(floor, on_path, ending, labels or {})):
            self._tick()
            fresh = self._assign(q, i, target)
            self.pinned[q][i] = on_path
            saved = self.floor[q]
            if not on_path and self.symmetric:
                self.floor[q] = target
            if self._consistent(q, finished):
                found = self._search()
                if found is not None:
                    return found
            self.floor[q] = saved
            self.pinned[q][i] = False
            self._unassign(q, i, fresh)
        return None

    def _close_as_sink(self, q: int) -> Optional[Automaton]:
        """Send every free letter of q back to q.

        When all example letters leaving q loop on q, any fitting completion
        stays fitting with the free letters looped as well: the value of q
        still solves its own equation and no other equation changes. Needs a
        single chain state.
        """
        self._tick()
        free = [i for i in range(self.sigma) if self.delta[q][i] is None]
        for i in free:
            self.delta[q][i] = q
        if self._plausible():
            found = self._search()
            if found is not None:
                return found
        for i in free:
            self.delta[q][i] = None
        return None

    def _solve_weights(self) -> Optional[Automaton]:
        shape = Automaton(
            self.alphabet,
            self.used,
            0,
            tuple(tuple(self.delta[q]) for q in range(self.used)),
            tuple((Fraction(0),) * self.sigma for _ in range(self.used)),
        )
        product = ProductChain((shape,), self.chain)
        forms = [product.component_form(c, 0) for c in product.bottoms]
        pairs = []
        for word, value, _ in self.examples:
            distribution = product.word_distribution(word)
            total = sum(distribution.values(), Fraction(0))
            scale = []
            for slot in range(len(forms)):
                scale.append(sum((mass * product.absorption[n][slot] for n, mass in distribution.items()), Fraction(0)) / total)
            pairs.append((add_forms(*forms, scale=scale), value))
        equalities, inequalities = _constraints(pairs, self.problem.slack)
        solution = feasible_point(equalities, inequalities)
        if solution is None:
            return None
        weights = [tuple(solution.get((q, i), Fraction(0)) for i in range(self.sigma)) for q in range(self.used)]
        return self._verify(shape.with_weights(weights))
