# ==================== COUNTEREXAMPLE NODE ====================
# File: nodes/counterexample_node.py

import logging

from learning.observation_table import process_counterexample
from state.learner_state import LearnerState

logger = logging.getLogger(__name__)


def process_counterexample_node(state: LearnerState) -> LearnerState:
    table = state["table"]
    counterexample = state["counterexample"]
    refined = process_counterexample(table, state["teacher"], counterexample, state["hypothesis"])

    lengths = list(state.get("counterexample_lengths", []))
    lengths.append(len(counterexample))
    history = list(state.get("history", []))
    history.append({
        "round": state.get("rounds", 0),
        "stage": "process_counterexample",
        "new_access_words": len(refined.access) - len(table.access),
        "new_test_words": len(refined.tests) - len(table.tests),
    })
    logger.debug("table grew to %d access words", len(refined.access))

    return {
        **state,
        "table": refined,
        "counterexample": None,
        "counterexample_lengths": lengths,
        "rounds": state.get("rounds", 0) + 1,
        "history": history,
    }
