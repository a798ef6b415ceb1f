# ==================== SAMPLE FIT CHECK ====================
# File: fit/check.py

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from core.automaton import Automaton
from core.errors import InputError
from core.lasso import eval_lasso
from analysis.expectation import conditional_expectation
from measures.markov_chain import MarkovChain
from measures.sample import LabeledExample, Sample


@dataclass(frozen=True)
class Violation:
    example: LabeledExample
    actual: Fraction


@dataclass(frozen=True)
class FitReport:
    violations: Tuple[Violation, ...]

    @property
    def fits(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.fits


def example_value(automaton: Automaton, example: LabeledExample, measure: Optional[MarkovChain] = None) -> Fraction:
    if example.v is not None:
        return eval_lasso(automaton, example.lasso)
    return conditional_expectation(automaton, example.u, measure)


def check_fit(automaton: Automaton, sample: Sample, measure: Optional[MarkovChain] = None) -> FitReport:
    """Exact comparison of every label with the automaton's value."""
    if automaton.alphabet != sample.alphabet:
        raise InputError(f"alphabet mismatch: {list(automaton.alphabet)} vs {list(sample.alphabet)}")
    violations: List[Violation] = []
    for example in sample.examples:
        actual = example_value(automaton, example, measure)
        if actual != example.value:
            violations.append(Violation(example, actual))
    return FitReport(tuple(violations))
