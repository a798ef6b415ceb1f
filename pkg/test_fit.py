from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from analysis.distance import distance
from analysis.rigid import rigid_check
from conftest import automata
from core.alphabet import Alphabet
from core.automaton import Automaton
from core.errors import BudgetExhausted, InputError
from core.lasso import Lasso, eval_lasso
from fit.approximate import approximate_bounded, enumerate_approximations
from fit.check import check_fit
from fit.search import FitProblem, fit_bounded
from fit.tree import fit_tree
from gadgets.sat0 import (
    Sat0Formula,
    Variant,
    all_formulas,
    gadget_canonical_automaton,
    gadget_sat0_to_esample,
    gadget_sat0_to_usample,
    is_satisfiable,
    sat0_alphabet,
    satisfying_valuation,
)
from measures.markov_chain import MarkovChain
from measures.sample import Sample, SampleKind
from measures.sampling import draw_sample

SATISFIABLE = Sat0Formula.from_literals([[1, 2], [-1]])
UNSATISFIABLE = Sat0Formula.from_literals([[1], [-1]], variable_count=2)


def _flawed_e_fit():
    """Four states fitting the E-sample of the unsatisfiable (x1) ∧ (¬x1)."""
    alphabet = sat0_alphabet(2)
    q1, q2, one, zero = 0, 1, 2, 3
    rows = []
    for letter in alphabet:
        rows.append((one, letter, one, 1))
        rows.append((zero, letter, zero, 0))
        rows.append((q2, letter, zero, 0))
    rows += [
        (q1, "c1", q1, 0), (q1, "c2", q2, 0), (q1, "a1", one, 0), (q1, "a2", zero, 0),
        (q1, "d1", one, 0), (q1, "d2", one, 0), (q1, "b", one, 0), (q1, "t", zero, 0),
        (q2, "a2", one, 0), (q2, "b", q1, 0),
    ]
    return Automaton.build(alphabet, 4, rows)


# ===== check_fit =====

def test_check_fit_lists_violated_examples(ab):
    sample = Sample.e_sample(ab, [("a", 0), ("b", 1)])
    report = check_fit(Automaton.constant(ab, 0), sample)
    assert not report.fits
    assert [v.example.u for v in report.violations] == [("b",)]
    assert report.violations[0].actual == 0


def test_check_fit_evaluates_lassos(toggle):
    sample = Sample.u_sample(toggle.alphabet, [("", "b", Fraction(1, 2)), ("b", "a", 0)])
    assert check_fit(toggle, sample).fits


def test_check_fit_needs_the_sample_alphabet(toggle):
    with pytest.raises(InputError):
        check_fit(toggle, Sample.e_sample(Alphabet.of("xy"), [("x", 0)]))


# ===== fit_tree =====

def test_empty_sample_fits_the_zero_automaton(ab):
    automaton = fit_tree(Sample(SampleKind.E, ab))
    assert automaton.state_count == 1
    assert automaton.weights[0] == (0, 0)


def test_tree_for_two_one_letter_words(ab):
    automaton = fit_tree(Sample.e_sample(ab, [("a", 0), ("b", 1)]))
    assert automaton.state_count == 3


def test_tree_realizes_a_lasso_value(ab):
    sample = Sample.u_sample(ab, [("a", "b", Fraction(1, 2))])
    automaton = fit_tree(sample)
    assert eval_lasso(automaton, Lasso(("a",), ("b",))) == Fraction(1, 2)


def test_tree_pushes_labels_below_fully_branching_nodes(ab):
    # the empty word has no free letter, so the a-subtree absorbs the correction
    sample = Sample.e_sample(ab, [("", Fraction(1, 2)), ("b", 1), ("aa", 0)])
    assert check_fit(fit_tree(sample), sample).fits


def test_tree_rejects_inconsistent_samples(ab):
    with pytest.raises(InputError):
        fit_tree(Sample.u_sample(ab, [("a", "a", 0), ("a", "aa", 1)]))


@given(automata(max_states=3), st.integers(0, 2**16), st.sampled_from(list(SampleKind)))
def test_tree_fits_every_drawn_sample(hidden, seed, kind):
    sample = draw_sample(kind, hidden, 6, np.random.default_rng(seed), n=3)
    automaton = fit_tree(sample)
    assert check_fit(automaton, sample).fits
    if sample.is_expectation:
        assert automaton.state_count <= sample.total_length + 2


# ===== fit_bounded =====

def test_constant_sample_fits_one_state(ab):
    sample = Sample.u_sample(ab, [("a", "b", Fraction(1, 3)), ("ab", "a", Fraction(1, 3))])
    found = fit_bounded(FitProblem(sample, 1))
    assert isinstance(found, Automaton)
    assert found.state_count == 1
    assert check_fit(found, sample).fits


def test_one_state_cannot_fit_two_values(ab):
    sample = Sample.u_sample(ab, [("", "a", 0), ("b", "a", 1)])
    assert fit_bounded(FitProblem(sample, 1)) is None
    assert isinstance(fit_bounded(FitProblem(sample, 2)), Automaton)


def test_expectation_fit_under_a_chain(ab):
    chain = MarkovChain.build(ab, 1, [(0, "a", 0, Fraction(1, 4)), (0, "b", 0, Fraction(3, 4))])
    sample = Sample.e_sample(ab, [("", Fraction(3, 4)), ("a", 0)])
    found = fit_bounded(FitProblem(sample, 3, measure=chain))
    assert isinstance(found, Automaton)
    assert check_fit(found, sample, chain).fits


def test_slack_relaxes_the_labels(ab):
    sample = Sample.u_sample(ab, [("", "a", 0), ("b", "a", Fraction(1, 4))])
    assert fit_bounded(FitProblem(sample, 1)) is None
    found = fit_bounded(FitProblem(sample, 1, slack=Fraction(1, 8)))
    assert isinstance(found, Automaton)
    assert found.state_count == 1


def test_tiny_budget_is_reported(ab):
    sample = Sample.e_sample(ab, [("a", 0), ("b", 1), ("aa", Fraction(1, 2))])
    outcome = fit_bounded(FitProblem(sample, 4, budget=1))
    assert isinstance(outcome, BudgetExhausted)
    assert outcome.budget == 1


@pytest.mark.parametrize("jobs", [2, 3])
def test_parallel_search_returns_the_serial_answer(ab, jobs):
    e_sample = Sample.e_sample(ab, [("a", 0), ("b", 1), ("aa", Fraction(1, 2))])
    u_sample = gadget_sat0_to_usample(SATISFIABLE)
    for problem in (FitProblem(e_sample, 3), FitProblem(u_sample, 2), FitProblem(u_sample, 1)):
        assert fit_bounded(problem, jobs=jobs) == fit_bounded(problem)
    assert isinstance(fit_bounded(FitProblem(e_sample, 4, budget=1), jobs=jobs), BudgetExhausted)


def test_fit_problem_validation(ab):
    sample = Sample.u_sample(ab, [("", "a", 0)])
    with pytest.raises(InputError):
        FitProblem(sample, 0)
    with pytest.raises(InputError):
        FitProblem(sample, 1, slack=Fraction(-1))
    with pytest.raises(InputError):
        FitProblem(sample, 1, measure=MarkovChain.uniform(ab))


@given(automata(max_states=2, max_denominator=4), st.integers(0, 2**16), st.sampled_from([SampleKind.U, SampleKind.E]))
def test_fit_finds_an_automaton_no_larger_than_the_hidden_one(hidden, seed, kind):
    sample = draw_sample(kind, hidden, 4, np.random.default_rng(seed))
    found = fit_bounded(FitProblem(sample, hidden.state_count))
    assert isinstance(found, Automaton)
    assert found.state_count <= hidden.state_count
    assert check_fit(found, sample).fits


# ===== SAT0 reductions =====

def test_u_sample_of_a_satisfiable_formula_is_fitted():
    sample = gadget_sat0_to_usample(SATISFIABLE)
    assert len(sample) == 12
    assert len(sample.alphabet) == 8
    found = fit_bounded(FitProblem(sample, 2))
    assert isinstance(found, Automaton)
    assert check_fit(found, sample).fits


def test_u_sample_of_an_unsatisfiable_formula_is_not_fitted():
    assert not is_satisfiable(UNSATISFIABLE)
    assert fit_bounded(FitProblem(gadget_sat0_to_usample(UNSATISFIABLE), 2)) is None


@pytest.mark.parametrize("variant", list(Variant))
def test_canonical_automata_fit_their_samples(variant):
    valuation = satisfying_valuation(SATISFIABLE)
    assert valuation == (False, True)
    automaton = gadget_canonical_automaton(SATISFIABLE, valuation, variant)
    if variant is Variant.U:
        sample = gadget_sat0_to_usample(SATISFIABLE)
        assert automaton.state_count == 2
    else:
        sample = gadget_sat0_to_esample(SATISFIABLE)
        assert automaton.state_count == 4
    assert check_fit(automaton, sample).fits


def test_canonical_automaton_needs_a_satisfying_valuation():
    with pytest.raises(InputError):
        gadget_canonical_automaton(SATISFIABLE, (True, True))


def test_e_sample_of_an_unsatisfiable_formula_still_has_a_small_fit():
    sample = gadget_sat0_to_esample(UNSATISFIABLE)
    assert check_fit(_flawed_e_fit(), sample).fits


def test_e_sample_of_a_satisfiable_formula_is_fitted():
    sample = gadget_sat0_to_esample(SATISFIABLE)
    found = fit_bounded(FitProblem(sample, 4))
    assert isinstance(found, Automaton)
    assert found.state_count <= 4
    assert check_fit(found, sample).fits


@pytest.mark.slow
def test_e_search_finds_the_flawed_fit():
    sample = gadget_sat0_to_esample(UNSATISFIABLE)
    found = fit_bounded(FitProblem(sample, 4))
    assert isinstance(found, Automaton)
    assert check_fit(found, sample).fits


@pytest.mark.slow
def test_e_search_fits_every_two_variable_formula():
    for formula in all_formulas(2):
        sample = gadget_sat0_to_esample(formula)
        found = fit_bounded(FitProblem(sample, 4, budget=500_000))
        assert isinstance(found, Automaton), formula
        assert check_fit(found, sample).fits


@pytest.mark.slow
def test_u_reduction_agrees_with_the_truth_table_oracle():
    for formula in all_formulas(2):
        sample = gadget_sat0_to_usample(formula)
        found = fit_bounded(FitProblem(sample, 2))
        assert (found is not None) == is_satisfiable(formula)
        valuation = satisfying_valuation(formula)
        if valuation is not None:
            assert check_fit(gadget_canonical_automaton(formula, valuation), sample).fits
            assert check_fit(gadget_canonical_automaton(formula, valuation, Variant.E), gadget_sat0_to_esample(formula)).fits


# ===== approximation search =====

def test_no_two_state_automaton_approximates_the_three_branch_automaton(fig3):
    assert approximate_bounded(fig3[0], 2, Fraction(1, 4)) is None


def test_three_states_suffice_for_a_quarter(fig3):
    a1 = fig3[0]
    found = approximate_bounded(a1, 3, Fraction(1, 4))
    assert isinstance(found, Automaton)
    assert distance(a1, found).total <= Fraction(1, 4)
    rigid = approximate_bounded(a1, 3, Fraction(1, 4), rigid=True)
    assert isinstance(rigid, Automaton)
    assert rigid_check(a1, rigid, Fraction(1, 4)).verdict


@pytest.mark.slow
def test_every_enumerated_approximation_is_within_epsilon(fig3):
    a1 = fig3[0]
    found = enumerate_approximations(a1, 3, Fraction(1, 4))
    assert len(found) >= 2
    for automaton in found:
        assert automaton.state_count <= 3
        assert distance(a1, automaton).total <= Fraction(1, 4)


def test_approximation_budget_is_reported(fig3):
    outcome = approximate_bounded(fig3[0], 3, Fraction(0), budget=5)
    assert isinstance(outcome, BudgetExhausted)
