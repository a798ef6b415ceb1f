# ==================== HYPOTHESIS NODE ====================
# File: nodes/hypothesis_node.py

import logging

from learning.observation_table import build_hypothesis
from state.learner_state import LearnerState

logger = logging.getLogger(__name__)


def build_hypothesis_node(state: LearnerState) -> LearnerState:
    hypothesis = build_hypothesis(state["table"], state["teacher"])
    logger.info("round %d: hypothesis with %d states", state.get("rounds", 0), hypothesis.state_count)

    history = list(state.get("history", []))
    history.append({
        "round": state.get("rounds", 0),
        "stage": "build_hypothesis",
        "states": hypothesis.state_count,
    })
    return {**state, "hypothesis": hypothesis, "history": history}
