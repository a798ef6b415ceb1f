# ==================== CLOSE TABLE NODE ====================
# File: nodes/close_table_node.py

import logging

from learning.observation_table import close_table, is_closed, is_separable
from state.learner_state import LearnerState
from core.errors import InvariantError

logger = logging.getLogger(__name__)


def close_table_node(state: LearnerState) -> LearnerState:
    """Close the table with expectation queries."""
    teacher = state["teacher"]
    table = close_table(state["table"], teacher)
    if not (is_closed(table, teacher) and is_separable(table)):
        raise InvariantError("table is not closed and separable after closing")

    logger.info("round %d: table closed with %d access and %d test words", state.get("rounds", 0), len(table.access), len(table.tests))
    teacher.snapshot({"event": "table", "round": state.get("rounds", 0), **table.as_dict(teacher.alphabet)})

    history = list(state.get("history", []))
    history.append({
        "round": state.get("rounds", 0),
        "stage": "close_table",
        "access_words": len(table.access),
        "test_words": len(table.tests),
    })
    return {**state, "table": table, "history": history}
