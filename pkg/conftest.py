import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from core.alphabet import Alphabet
from core.automaton import Automaton
from core.lasso import Lasso
from gadgets.figures import a1, a2, a3

settings.register_profile("default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("acceptance", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
PROFILE = os.getenv("HYPOTHESIS_PROFILE", "default")
settings.load_profile(PROFILE)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run acceptance-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or PROFILE == "acceptance":
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow or HYPOTHESIS_PROFILE=acceptance")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ===== strategies =====

def alphabets(max_size: int = 3):
    return st.integers(min_value=1, max_value=max_size).map(lambda k: Alphabet.of("abc"[:k]))


def rationals(max_denominator: int = 8, bound: int = 4):
    return st.builds(
        Fraction,
        st.integers(min_value=-bound * max_denominator, max_value=bound * max_denominator),
        st.integers(min_value=1, max_value=max_denominator),
    )


@st.composite
def automata(draw, alphabet=None, max_states: int = 4, max_denominator: int = 8):
    if alphabet is None:
        alphabet = draw(alphabets())
    n = draw(st.integers(min_value=1, max_value=max_states))
    sigma = len(alphabet)
    delta = tuple(tuple(draw(st.integers(0, n - 1)) for _ in range(sigma)) for _ in range(n))
    weights = tuple(tuple(draw(rationals(max_denominator)) for _ in range(sigma)) for _ in range(n))
    return Automaton(alphabet, n, 0, delta, weights)


@st.composite
def automaton_pairs(draw, max_states: int = 4, alphabet=None):
    if alphabet is None:
        alphabet = draw(alphabets())
    return draw(automata(alphabet, max_states)), draw(automata(alphabet, max_states))


def words(alphabet: Alphabet, max_length: int = 5):
    return st.lists(st.sampled_from(alphabet.letters), max_size=max_length).map(tuple)


@st.composite
def lassos(draw, alphabet: Alphabet, max_length: int = 4):
    prefix = draw(words(alphabet, max_length))
    period = draw(st.lists(st.sampled_from(alphabet.letters), min_size=1, max_size=max_length).map(tuple))
    return Lasso(prefix, period)


# ===== fixtures =====

@pytest.fixture
def ab():
    return Alphabet.of("ab")


@pytest.fixture
def fig3():
    return a1(), a2(), a3()


@pytest.fixture
def toggle(ab):
    """Two states swapping on b; weights 1 in state 0 and 0 in state 1 (value 1/2 a.s.)."""
    return Automaton.build(ab, 2, [(0, "a", 0, 1), (0, "b", 1, 1), (1, "a", 1, 0), (1, "b", 0, 0)])


@pytest.fixture
def first_letter(ab):
    """Value 1 if the word starts with a, else 0."""
    return Automaton.build(
        ab,
        3,
        [(0, "a", 1, 0), (0, "b", 2, 0), (1, "a", 1, 1), (1, "b", 1, 1), (2, "a", 2, 0), (2, "b", 2, 0)],
    )
