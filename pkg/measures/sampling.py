# ==================== SAMPLE GENERATION ====================
# File: measures/sampling.py

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from analysis.expectation import conditional_expectation
from config.settings import settings
from core.automaton import Automaton, require_valid
from core.errors import InputError
from core.lasso import Lasso, eval_lasso
from measures.distribution import UniformN, UniformTerm, draw_word
from measures.sample import LabeledExample, Sample, SampleKind

logger = logging.getLogger(__name__)


def draw_sample(
    kind: SampleKind,
    hidden: Automaton,
    count: int,
    rng: np.random.Generator,
    lam: Optional[Fraction] = None,
    lam2: Optional[Fraction] = None,
    n: Optional[int] = None,
) -> Sample:
    """Draw ``count`` labeled examples and reduce them to a minimal consistent sample.

    U-samples draw u from 𝒰_lam and v from 𝒰_lam2 (an empty v is redrawn);
    E-samples draw u from 𝒰_lam; En-samples draw u from 𝒰ⁿ. Labels come
    from the hidden automaton under the uniform measure on infinite words.
    """
    kind = SampleKind(kind)
    require_valid(hidden)
    if count < 0:
        raise InputError("sample count must be non-negative")
    alphabet = hidden.alphabet
    lam = Fraction(settings.DEFAULT_LAMBDA if lam is None else lam)
    lam2 = lam if lam2 is None else Fraction(lam2)

    examples = []
    if kind is SampleKind.U:
        prefixes, periods = UniformTerm(alphabet, lam), UniformTerm(alphabet, lam2)
        for _ in range(count):
            u = draw_word(prefixes, rng)
            v = draw_word(periods, rng)
            while not v:
                v = draw_word(periods, rng)
            examples.append(LabeledExample(u, v, eval_lasso(hidden, Lasso(u, v))))
    else:
        if kind is SampleKind.EN:
            if n is None or n < 0:
                raise InputError("En-samples need a non-negative word length n")
            words = UniformN(alphabet, n)
        else:
            words = UniformTerm(alphabet, lam)
        for _ in range(count):
            u = draw_word(words, rng)
            examples.append(LabeledExample(u, None, conditional_expectation(hidden, u)))

    sample = Sample(kind, alphabet, tuple(examples), n if kind is SampleKind.EN else None).deduplicated()
    logger.debug("drew %d %s-examples, %d distinct", count, kind.value, len(sample))
    return sample
