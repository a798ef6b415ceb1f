from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from analysis.expectation import conditional_expectation
from conftest import automata
from core.alphabet import Alphabet
from core.automaton import Automaton
from core.errors import DomainError, InputError
from core.lasso import Lasso, eval_lasso
from measures.consistency import check_sample_consistency, require_consistent
from measures.distribution import (
    ChainMeasure,
    UniformInfinite,
    UniformN,
    UniformTerm,
    cylinder_probability,
    draw_word,
    word_probability,
)
from measures.markov_chain import MarkovChain, is_non_vanishing
from measures.sample import LabeledExample, Sample, SampleKind
from measures.sampling import draw_sample


def _biased_chain(ab):
    """Two states; state 0 prefers a, state 1 prefers b."""
    return MarkovChain.build(
        ab,
        2,
        [(0, "a", 0, Fraction(3, 4)), (0, "b", 1, Fraction(1, 4)), (1, "a", 0, Fraction(1, 2)), (1, "b", 1, Fraction(1, 2))],
    )


# ===== word probabilities =====

def test_word_probability_under_each_distribution(ab):
    assert word_probability(UniformTerm(ab, Fraction(1, 2)), "ab") == Fraction(1, 32)
    assert word_probability(UniformN(ab, 3), "aba") == Fraction(1, 8)
    assert word_probability(UniformN(ab, 3), "ab") == 0
    assert word_probability(ChainMeasure(MarkovChain.uniform(ab)), "aa") == Fraction(1, 4)
    assert word_probability(UniformInfinite(ab), "abb") == Fraction(1, 8)


def test_word_probability_rejects_unknown_letters(ab):
    with pytest.raises(InputError):
        word_probability(UniformN(ab, 1), "c")


@pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(1, 3), Fraction(7, 8)])
def test_terminating_measure_spreads_exact_mass_per_length(lam):
    alphabet = Alphabet.of("abc")
    dist = UniformTerm(alphabet, lam)
    for k in range(5):
        total = sum(word_probability(dist, word) for word in alphabet.words_of_length(k))
        assert total == (1 - lam) ** k * lam


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1), Fraction(-1, 2)])
def test_terminating_measure_needs_lambda_strictly_inside(ab, lam):
    with pytest.raises(InputError):
        UniformTerm(ab, lam)


def test_chain_cylinders_split_over_one_letter_extensions(ab):
    measure = ChainMeasure(_biased_chain(ab))
    for k in range(4):
        for word in ab.words_of_length(k):
            parts = sum(cylinder_probability(measure, word + (letter,)) for letter in ab)
            assert parts == cylinder_probability(measure, word)
    assert cylinder_probability(measure, "ab") == Fraction(3, 16)


# ===== drawing words =====

def test_draw_word_respects_the_support(ab):
    rng = np.random.default_rng(7)
    assert draw_word(UniformN(ab, 0), rng) == ()
    assert len(draw_word(UniformN(ab, 5), rng)) == 5
    assert len(draw_word(ChainMeasure(_biased_chain(ab), cutoff=6), rng)) == 6


def test_draw_word_mean_length_follows_the_geometric_law(ab):
    rng = np.random.default_rng(2024)
    dist = UniformTerm(ab, Fraction(1, 2))
    lengths = [len(draw_word(dist, rng)) for _ in range(10000)]
    assert abs(np.mean(lengths) - 1) < 0.1


def test_draw_word_is_deterministic_given_the_seed(ab):
    dist = UniformTerm(ab, Fraction(1, 3))
    first = [draw_word(dist, np.random.default_rng(11)) for _ in range(5)]
    second = [draw_word(dist, np.random.default_rng(11)) for _ in range(5)]
    assert first == second


def test_infinite_words_cannot_be_drawn(ab):
    with pytest.raises(DomainError):
        draw_word(UniformInfinite(ab), np.random.default_rng(0))


# ===== Markov chains =====

def test_chain_rows_must_sum_to_one(ab):
    with pytest.raises(InputError):
        MarkovChain.build(ab, 1, [(0, "a", 0, Fraction(1, 2))])
    with pytest.raises(InputError):
        MarkovChain.build(ab, 1, [(0, "a", 0, Fraction(3, 2)), (0, "b", 0, Fraction(-1, 2))])


def test_uniform_chain_is_recognised(ab):
    assert MarkovChain.uniform(ab).is_uniform
    assert not _biased_chain(ab).is_uniform


def test_non_vanishing(ab):
    assert is_non_vanishing(MarkovChain.uniform(ab))
    assert is_non_vanishing(_biased_chain(ab))
    assert not is_non_vanishing(MarkovChain.build(ab, 1, [(0, "a", 0, 1)]))
    # b is only possible from state 1, which is reachable only via b
    stuck = MarkovChain.build(ab, 2, [(0, "a", 0, 1), (1, "a", 0, Fraction(1, 2)), (1, "b", 1, Fraction(1, 2))])
    assert not is_non_vanishing(stuck)


def test_non_vanishing_chains_give_every_short_word_positive_mass(ab):
    chain = _biased_chain(ab)
    for k in range(5):
        for word in product(ab.letters, repeat=k):
            assert chain.cylinder_probability(word) > 0


# ===== samples and consistency =====

def test_sample_kinds_are_homogeneous(ab):
    with pytest.raises(InputError):
        Sample(SampleKind.E, ab, (LabeledExample(("a",), ("b",), 0),))
    with pytest.raises(InputError):
        Sample.en_sample(ab, 2, [("a", 0)])
    with pytest.raises(InputError):
        LabeledExample(("a",), (), 0)


def test_total_length_counts_both_lasso_parts(ab):
    sample = Sample.u_sample(ab, [("ab", "a", 0), ("", "bb", 1)])
    assert sample.total_length == 5


def test_inconsistent_u_sample(ab):
    sample = Sample.u_sample(ab, [("a", "a", 0), ("a", "aa", 1)])
    assert len(check_sample_consistency(sample, ab)) == 1
    with pytest.raises(InputError):
        require_consistent(sample)


def test_inconsistent_e_sample(ab):
    sample = Sample.e_sample(ab, [("aa", 0), ("ab", Fraction(1, 2)), ("a", 1)])
    assert check_sample_consistency(sample, ab)


def test_partial_e_sample_is_consistent(ab):
    sample = Sample.e_sample(ab, [("aa", 0), ("ab", Fraction(1, 2))])
    assert check_sample_consistency(sample, ab) == []


def test_e_sample_conflicts_found_through_propagation(ab):
    sample = Sample.e_sample(ab, [("", Fraction(1, 2)), ("b", 0), ("aa", 1), ("ab", 1), ("a", Fraction(1, 2))])
    assert check_sample_consistency(sample, ab)
    # the empty word and b force a = 1 while aa and ab average 1/2
    derived = Sample.e_sample(ab, [("", Fraction(1, 2)), ("b", 0), ("aa", 1), ("ab", 0)])
    assert check_sample_consistency(derived, ab)


def test_single_letter_e_samples_settle():
    unary = Alphabet.of("a")
    assert check_sample_consistency(Sample.e_sample(unary, [("a", 1)])) == []
    # the empty word forces a = 1, which forces aa = 1
    assert check_sample_consistency(Sample.e_sample(unary, [("", 1), ("aa", 0)]))


def test_duplicate_words_are_removed_by_canonical_lasso(ab):
    sample = Sample.u_sample(ab, [("", "ab", 1), ("ab", "abab", 1), ("a", "ba", 1)])
    assert len(sample.deduplicated()) == 1


# ===== drawing samples =====

def test_empty_draw_gives_an_empty_sample(toggle):
    assert len(draw_sample(SampleKind.U, toggle, 0, np.random.default_rng(0))) == 0


@pytest.mark.parametrize("kind", list(SampleKind))
def test_constant_hidden_automaton_labels_everything_the_same(ab, kind):
    hidden = Automaton.constant(ab, Fraction(1, 3))
    sample = draw_sample(kind, hidden, 5, np.random.default_rng(3), n=2)
    assert {example.value for example in sample.examples} == {Fraction(1, 3)}


def test_first_letter_a_of_the_three_branch_automaton_is_zero(fig3):
    sample = draw_sample(SampleKind.EN, fig3[0], 60, np.random.default_rng(5), n=1)
    values = {example.u: example.value for example in sample.examples}
    assert values[("a",)] == 0


@given(automata(), st.integers(min_value=0, max_value=2**16), st.sampled_from(list(SampleKind)))
def test_drawn_labels_match_direct_recomputation(hidden, seed, kind):
    sample = draw_sample(kind, hidden, 6, np.random.default_rng(seed), n=2)
    assert check_sample_consistency(sample) == []
    for example in sample.examples:
        if example.v is None:
            assert example.value == conditional_expectation(hidden, example.u)
        else:
            assert example.v
            assert example.value == eval_lasso(hidden, Lasso(example.u, example.v))
