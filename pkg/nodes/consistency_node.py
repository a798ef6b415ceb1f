# ==================== CONSISTENCY QUERY NODE ====================
# File: nodes/consistency_node.py

import logging
from fractions import Fraction

from analysis.distance import Equivalent
from state.learner_state import LearnerState

logger = logging.getLogger(__name__)


def consistency_query_node(state: LearnerState) -> LearnerState:
    """
    Ask the teacher whether the hypothesis is almost equivalent (ε = 0)
    """
    teacher = state["teacher"]
    answer = teacher.consistency(state["hypothesis"], Fraction(0))
    converged = isinstance(answer, Equivalent)
    counterexample = None if converged else answer.word

    history = list(state.get("history", []))
    record = {"round": state.get("rounds", 0), "stage": "consistency_query", "answer": "YES" if converged else "counterexample"}
    if counterexample is not None:
        record["counterexample"] = teacher.alphabet.format_word(counterexample)
        logger.info("round %d: counterexample %r", state.get("rounds", 0), record["counterexample"])
    history.append(record)

    return {**state, "converged": converged, "counterexample": counterexample, "history": history}


def route_after_consistency(state: LearnerState) -> str:
    """
    Route after the consistency query: stop on YES, otherwise refine the table
    """
    if state.get("converged", False):
        return "end"
    return "process_counterexample"
