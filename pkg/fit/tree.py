# ==================== TREE FITTING ====================
# File: fit/tree.py

"""Prefix-tree automata fitting a consistent sample exactly.

E-samples: the trie of the example words, leaves turned into sinks carrying
their labels. A labeled inner node routes its letters outside the trie to a
sink valued so that the average over its letters equals its label; when it
has no such letters the correction is pushed into an unlabeled child that
has some. Letters outside the trie otherwise go to the first leaf sink.

U-samples: every canonical lasso is unfolded until its prefix is shared with
no other example, then closed by a private cycle following the period with
every weight equal to the label.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.alphabet import Alphabet, Word
from core.automaton import Automaton
from core.errors import InvariantError
from core.lasso import Lasso, canonical_lasso
from measures.consistency import require_consistent
from measures.sample import Sample
from fit.check import check_fit

logger = logging.getLogger(__name__)


def fit_tree(sample: Sample) -> Automaton:
    require_consistent(sample)
    if not sample.examples:
        return Automaton.constant(sample.alphabet, 0)
    if sample.is_expectation:
        automaton = _expectation_tree(sample)
    else:
        automaton = _lasso_tree(sample)
    report = check_fit(automaton, sample)
    if not report.fits:
        raise InvariantError(f"tree automaton misses {len(report.violations)} examples")
    logger.debug("tree automaton with %d states for a sample of total length %d", automaton.state_count, sample.total_length)
    return automaton


class _Builder:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.delta: List[List[Optional[int]]] = []
        self.weights: List[List[Fraction]] = []

    def add_state(self) -> int:
        self.delta.append([None] * len(self.alphabet))
        self.weights.append([Fraction(0)] * len(self.alphabet))
        return len(self.delta) - 1

    def make_sink(self, state: int, value: Fraction) -> None:
        self.delta[state] = [state] * len(self.alphabet)
        self.weights[state] = [value] * len(self.alphabet)

    def fill_missing(self, state: int, target: int) -> None:
        self.delta[state] = [target if t is None else t for t in self.delta[state]]

    def build(self) -> Automaton:
        return Automaton(self.alphabet, len(self.delta), 0, tuple(map(tuple, self.delta)), tuple(map(tuple, self.weights)))


def _trie(words: List[Word]) -> List[Word]:
    nodes = {()}
    for word in words:
        for k in range(1, len(word) + 1):
            nodes.add(word[:k])
    return list(nodes)


def _expectation_tree(sample: Sample) -> Automaton:
    alphabet = sample.alphabet
    sigma = len(alphabet)
    labels: Dict[Word, Fraction] = {}
    for example in sample.examples:
        labels.setdefault(example.u, example.value)

    order = {letter: i for i, letter in enumerate(alphabet.letters)}
    nodes = sorted(_trie(list(labels)), key=lambda w: (len(w), [order[x] for x in w]))
    present = set(nodes)
    children = {u: [a for a in alphabet.letters if u + (a,) in present] for u in nodes}
    free = {u: [a for a in alphabet.letters if u + (a,) not in present] for u in nodes}
    leaves = [u for u in nodes if not children[u]]
    default_value = labels[leaves[0]]

    # value each node takes when nothing forces it, free letters going to the default sink
    value: Dict[Word, Fraction] = {}
    flexible: Dict[Word, bool] = {}
    for u in reversed(nodes):
        if u in labels:
            value[u] = labels[u]
            flexible[u] = False
        else:
            inner = sum((value[u + (a,)] for a in children[u]), Fraction(0))
            value[u] = (inner + len(free[u]) * default_value) / sigma
            flexible[u] = bool(free[u]) or any(flexible[u + (a,)] for a in children[u])

    builder = _Builder(alphabet)
    state_of = {u: builder.add_state() for u in nodes}
    for u in leaves:
        builder.make_sink(state_of[u], labels[u])
    default_sink = state_of[leaves[0]]

    required: Dict[Word, Fraction] = {u: labels[u] for u in nodes if u in labels and children[u]}
    free_target: Dict[Word, int] = {}
    for u in nodes:
        if u not in required:
            continue
        target = sigma * required[u]
        if free[u]:
            rest = sum((value[u + (a,)] for a in children[u]), Fraction(0))
            y = (target - rest) / len(free[u])
            if y == default_value:
                free_target[u] = default_sink
            else:
                sink = builder.add_state()
                builder.make_sink(sink, y)
                free_target[u] = sink
            continue
        pushed = next((u + (a,) for a in children[u] if flexible[u + (a,)]), None)
        if pushed is None:
            continue
        rest = sum((value[u + (a,)] for a in children[u] if u + (a,) != pushed), Fraction(0))
        required[pushed] = target - rest
        value[pushed] = required[pushed]

    for u in nodes:
        if not children[u]:
            continue
        for a in children[u]:
            builder.delta[state_of[u]][alphabet.index(a)] = state_of[u + (a,)]
        builder.fill_missing(state_of[u], free_target.get(u, default_sink))
    return builder.build()


def _common_prefix(left: Lasso, right: Lasso) -> int:
    bound = max(len(left.prefix), len(right.prefix)) + len(left.period) + len(right.period)
    a, b = left.unfold(bound), right.unfold(bound)
    k = 0
    while k < bound and a[k] == b[k]:
        k += 1
    return k


def _lasso_tree(sample: Sample) -> Automaton:
    alphabet = sample.alphabet
    lassos: Dict[Lasso, Fraction] = {}
    for example in sample.examples:
        lassos.setdefault(canonical_lasso(example.lasso), example.value)
    items: List[Tuple[Lasso, Fraction]] = list(lassos.items())

    depths = []
    for k, (lasso, _) in enumerate(items):
        shared = max((_common_prefix(lasso, other) for j, (other, _) in enumerate(items) if j != k), default=-1)
        depths.append(max(len(lasso.prefix), shared + 1))

    builder = _Builder(alphabet)
    state_of: Dict[Word, int] = {(): builder.add_state()}
    for (lasso, value), depth in zip(items, depths):
        path = lasso.unfold(depth)
        for k in range(1, depth + 1):
            if path[:k] not in state_of:
                state_of[path[:k]] = builder.add_state()
                builder.delta[state_of[path[:k - 1]]][alphabet.index(path[k - 1])] = state_of[path[:k]]

        # the private node starts a cycle reading the period from the matching offset
        offset = (depth - len(lasso.prefix)) % len(lasso.period)
        loop = lasso.period[offset:] + lasso.period[:offset]
        cycle = [state_of[path]] + [builder.add_state() for _ in loop[1:]]
        for k, letter in enumerate(loop):
            i = alphabet.index(letter)
            builder.delta[cycle[k]][i] = cycle[(k + 1) % len(cycle)]
            builder.weights[cycle[k]][i] = value

    zero_sink = builder.add_state()
    builder.make_sink(zero_sink, Fraction(0))
    for q in range(len(builder.delta)):
        builder.fill_missing(q, zero_sink)
    return builder.build()
