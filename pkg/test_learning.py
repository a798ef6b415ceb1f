from fractions import Fraction

import pytest
from hypothesis import given

from analysis.distance import Counterexample, Equivalent, distance
from analysis.minimize import minimize_almost_exact
from conftest import automata
from core.automaton import Automaton
from core.errors import InputError
from gadgets.characterization import gadget_characterization
from learning.learner import learn
from learning.observation_table import (
    close_table,
    initial_table,
    is_closed,
    is_separable,
    process_counterexample,
)
from learning.teacher import Teacher, teacher_consistency, teacher_expectation
from utils.learning_runner import run_learning
from utils.visualization_utils import WorkflowVisualizer


# ===== teacher =====

def test_teacher_expectation_answers(fig3, ab):
    assert teacher_expectation(Teacher(fig3[0]), "b") == Fraction(1, 2)
    assert teacher_expectation(Teacher(Automaton.constant(ab, Fraction(3, 7))), "abba") == Fraction(3, 7)
    gadget, _ = gadget_characterization(2)
    assert teacher_expectation(Teacher(gadget), "aaba") == 1


def test_teacher_logs_every_query(fig3):
    teacher = Teacher(fig3[0], record_trace=True)
    teacher.expectation("ab")
    teacher.expectation("")
    teacher.consistency(fig3[0])
    assert teacher.log.as_dict() == {"expectation_queries": 2, "consistency_queries": 1, "total_length": 2}
    assert [entry["query"] for entry in teacher.trace] == ["expectation", "expectation", "consistency"]
    assert teacher.trace[0]["answer"] == "0"


def test_teacher_consistency_respects_epsilon(fig3):
    a1, a2, _ = fig3
    teacher = Teacher(a1)
    assert isinstance(teacher_consistency(teacher, a1), Equivalent)
    assert isinstance(teacher_consistency(teacher, a2, Fraction(1, 4)), Equivalent)
    answer = teacher_consistency(teacher, a2, Fraction(0))
    assert isinstance(answer, Counterexample)
    assert answer.word == ("a",)


def test_teacher_rejects_foreign_alphabets(fig3, toggle):
    with pytest.raises(InputError):
        Teacher(fig3[0]).consistency(toggle)


# ===== observation table =====

def test_constant_function_table_is_already_closed(ab):
    teacher = Teacher(Automaton.constant(ab, Fraction(2, 5)))
    table = initial_table(teacher)
    assert is_closed(table, teacher)
    assert close_table(table, teacher).access == ((),)


def test_closing_adds_shortest_unmatched_extensions(fig3):
    teacher = Teacher(fig3[0])
    table = close_table(initial_table(teacher), teacher)
    assert table.access == ((), ("a",), ("c",))
    assert is_separable(table) and is_closed(table, teacher)
    assert close_table(table, teacher).access == table.access


def test_counterexample_adds_the_diverging_access_word(fig3, ab):
    teacher = Teacher(fig3[0])
    table = initial_table(teacher)
    hypothesis = Automaton.constant(fig3[0].alphabet, Fraction(1, 2))
    refined = process_counterexample(table, teacher, "a", hypothesis)
    assert refined.access == ((), ("a",))
    assert refined.tests == ((),)


def test_non_counterexamples_are_rejected(fig3):
    teacher = Teacher(fig3[0])
    with pytest.raises(InputError):
        process_counterexample(initial_table(teacher), teacher, "c", fig3[0])


def test_counterexample_grows_access_and_test_words_on_the_gadget():
    gadget, _ = gadget_characterization(2)
    teacher = Teacher(gadget)
    table = close_table(initial_table(teacher), teacher)
    hypothesis = Automaton.constant(gadget.alphabet, 0)
    refined = process_counterexample(table, teacher, "aaba", hypothesis)
    assert len(refined.access) == len(table.access) + 1
    assert len(refined.tests) == len(table.tests) + 1


# ===== learner =====

def test_constant_function_is_learned_without_counterexamples(ab):
    result = learn(Teacher(Automaton.constant(ab, Fraction(3, 7))))
    assert result.automaton.state_count == 1
    assert result.counterexample_lengths == ()
    assert result.consistency_queries == 1


def test_three_branch_automaton_is_learned_exactly(fig3):
    result = learn(Teacher(fig3[0]))
    assert result.automaton.state_count == 4
    assert distance(result.automaton, fig3[0]).total == 0
    stats = result.stats()
    assert stats["states"] == 4
    assert stats["rounds"] == len(stats["counterexample_lengths"])


@pytest.mark.parametrize("n", [2, 4])
def test_characterization_gadgets_are_learned_apart(n):
    a_n, a_n_bar = gadget_characterization(n)
    left, right = learn(Teacher(a_n)).automaton, learn(Teacher(a_n_bar)).automaton
    assert left.state_count == n + 4
    assert distance(left, a_n).total == 0
    assert distance(right, a_n_bar).total == 0
    assert distance(left, right).total == 2


@given(automata(max_states=6))
def test_learner_finds_the_minimal_almost_equivalent_automaton(hidden):
    result = learn(Teacher(hidden))
    assert distance(result.automaton, hidden).total == 0
    states = result.automaton.state_count
    assert states <= minimize_almost_exact(hidden).state_count
    assert states == minimize_almost_exact(hidden).state_count
    assert result.consistency_queries == result.rounds + 1

    sizes = [entry["states"] for entry in result.history if entry["stage"] == "build_hypothesis"]
    assert len(sizes) == result.rounds + 1
    assert all(before < after for before, after in zip(sizes, sizes[1:]))

    # table cells, then per round: the check, two divergence scans and the suffix search
    sigma = len(hidden.alphabet)
    seen = states * hidden.state_count
    longest = max(result.counterexample_lengths, default=0)
    per_round = 1 + (longest + 1) + (longest + seen + 1) + 2 * (1 + sigma * seen)
    assert result.expectation_queries <= states * (1 + sigma) * (result.rounds + 1) + result.rounds * per_round


# ===== workflow =====

def test_run_learning_reports_success(fig3):
    result = run_learning(Teacher(fig3[1]))
    assert result["success"]
    assert result["states"] == 3
    assert result["queries"]["consistency_queries"] == result["rounds"] + 1


def test_run_learning_reports_failures():
    result = run_learning(None)
    assert not result["success"]
    assert result["error_type"] == "AttributeError"
    assert isinstance(result["exception"], AttributeError)


def test_table_snapshots_land_in_the_trace(fig3):
    teacher = Teacher(fig3[0], record_trace=True)
    learn(teacher)
    tables = [entry for entry in teacher.trace if entry.get("event") == "table"]
    assert tables
    assert tables[-1]["access"][0] == ""


def test_workflow_diagram_names_every_node():
    diagram = WorkflowVisualizer().workflow_mermaid_code()
    for node in ("close_table", "build_hypothesis", "consistency_query", "process_counterexample"):
        assert node in diagram
