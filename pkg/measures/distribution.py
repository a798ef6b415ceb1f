# ==================== WORD DISTRIBUTIONS ====================
# File: measures/distribution.py

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Union

import numpy as np

from config.settings import settings
from core.alphabet import Alphabet, Word, WordLike
from core.errors import DomainError, InputError
from measures.markov_chain import MarkovChain


@dataclass(frozen=True)
class UniformN:
    """Uniform over words of exactly ``length`` letters."""

    alphabet: Alphabet
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise InputError("word length must be non-negative")


@dataclass(frozen=True)
class UniformTerm:
    """Letters drawn uniformly; the process stops after each step with probability ``lam``."""

    alphabet: Alphabet
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not 0 < self.lam < 1:
            raise InputError(f"lambda must lie strictly between 0 and 1, got {self.lam}")


@dataclass(frozen=True)
class UniformInfinite:
    """The uniform measure on infinite words."""

    alphabet: Alphabet


@dataclass(frozen=True)
class ChainMeasure:
    chain: MarkovChain
    cutoff: int = field(default_factory=lambda: settings.CHAIN_WORD_CUTOFF)

    @property
    def alphabet(self) -> Alphabet:
        return self.chain.alphabet


Distribution = Union[UniformN, UniformTerm, UniformInfinite, ChainMeasure]


def word_probability(dist: Distribution, word: WordLike) -> Fraction:
    """Point probability for finite-word distributions, cylinder probability otherwise."""
    letters = dist.alphabet.word(word)
    sigma = len(dist.alphabet)
    if isinstance(dist, UniformN):
        return Fraction(1, sigma ** dist.length) if len(letters) == dist.length else Fraction(0)
    if isinstance(dist, UniformTerm):
        return Fraction(1, sigma ** len(letters)) * (1 - dist.lam) ** len(letters) * dist.lam
    if isinstance(dist, UniformInfinite):
        return Fraction(1, sigma ** len(letters))
    return dist.chain.cylinder_probability(letters)


def cylinder_probability(dist: Distribution, word: WordLike) -> Fraction:
    """Probability that the drawn word starts with ``word``."""
    letters = dist.alphabet.word(word)
    sigma = len(dist.alphabet)
    if isinstance(dist, UniformN):
        return Fraction(1, sigma ** len(letters)) if len(letters) <= dist.length else Fraction(0)
    if isinstance(dist, UniformTerm):
        return Fraction(1, sigma ** len(letters)) * (1 - dist.lam) ** len(letters)
    if isinstance(dist, UniformInfinite):
        return Fraction(1, sigma ** len(letters))
    return dist.chain.cylinder_probability(letters)


def _bernoulli(rng: np.random.Generator, p: Fraction) -> bool:
    return int(rng.integers(0, p.denominator)) < p.numerator


def draw_word(dist: Distribution, rng: np.random.Generator) -> Word:
    letters = dist.alphabet.letters
    if isinstance(dist, UniformN):
        return tuple(letters[int(i)] for i in rng.integers(0, len(letters), size=dist.length))
    if isinstance(dist, UniformTerm):
        word: List[str] = []
        while not _bernoulli(rng, dist.lam):
            word.append(letters[int(rng.integers(0, len(letters)))])
        return tuple(word)
    if isinstance(dist, UniformInfinite):
        raise DomainError("cannot draw a finite word from the measure on infinite words")

    chain = dist.chain
    state = chain.initial
    word = []
    for _ in range(dist.cutoff):
        edges = chain.out_edges[state]
        scale = math.lcm(*(p.denominator for _, _, p in edges))
        pick = int(rng.integers(0, scale))
        for i, target, p in edges:
            pick -= int(p * scale)
            if pick < 0:
                word.append(letters[i])
                state = target
                break
    return tuple(word)
