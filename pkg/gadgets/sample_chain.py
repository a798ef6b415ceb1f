# ==================== SAMPLE-INDUCED MARKOV CHAIN ====================
# File: gadgets/sample_chain.py

from fractions import Fraction
from typing import Dict, List

from core.alphabet import Word
from core.errors import InputError
from measures.markov_chain import MarkovChain
from measures.sample import Sample


def gadget_sample_chain(sample: Sample) -> MarkovChain:
    """The chain giving each sample word uᵢ's cylinder mass 1/k, uniform afterwards.

    States are the proper prefixes of the words plus one uniform state that
    every word leads into.
    """
    if not sample.is_expectation:
        raise InputError("the sample chain is defined for E-samples")
    words = sorted(set(example.u for example in sample.examples), key=lambda w: (len(w), w))
    if not words:
        raise InputError("the sample chain needs at least one word")
    for i, left in enumerate(words):
        for right in words[i + 1:]:
            if right[: len(left)] == left:
                raise InputError(f"sample words {left} and {right} are prefix-comparable")

    alphabet = sample.alphabet
    below: Dict[Word, int] = {}
    for word in words:
        for cut in range(len(word) + 1):
            below[word[:cut]] = below.get(word[:cut], 0) + 1

    ends = set(words)
    prefixes = sorted((p for p in below if p not in ends), key=lambda w: (len(w), w))
    state = {p: s for s, p in enumerate(prefixes)}
    uniform = len(prefixes)
    for word in ends:
        state[word] = uniform

    edges: List = []
    for p in prefixes:
        for letter in alphabet:
            child = p + (letter,)
            if child in below:
                edges.append((state[p], letter, state[child], Fraction(below[child], below[p])))
    for letter in alphabet:
        edges.append((uniform, letter, uniform, Fraction(1, len(alphabet))))
    return MarkovChain.build(alphabet, uniform + 1, edges, state[()])
