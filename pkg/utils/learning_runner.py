import logging
from typing import Any, Dict

from config.settings import settings
from learning.observation_table import initial_table
from learning.teacher import Teacher
from state.learner_state import LearnerState
from workflow.learning_workflow import create_learning_workflow

logger = logging.getLogger(__name__)


class LearningRunner:
    """Runs one learning session of the LangGraph learner against a teacher"""

    def __init__(self):
        self.workflow = create_learning_workflow()
        self.config = {"recursion_limit": settings.LEARNER_RECURSION_LIMIT}

    def run_session(self, teacher: Teacher) -> LearnerState:
        initial_state = LearnerState(
            teacher=teacher,
            table=initial_table(teacher),
            hypothesis=None,
            counterexample=None,
            rounds=0,
            counterexample_lengths=[],
            converged=False,
            history=[],
        )
        logger.info("learning session started on a %d-letter alphabet", len(teacher.alphabet))
        final_state = self.workflow.invoke(initial_state, config=self.config)
        logger.info("learning session finished after %d rounds", final_state.get("rounds", 0))
        return final_state


# ==================== CONVENIENCE FUNCTION ====================

def run_learning(teacher: Teacher) -> Dict[str, Any]:
    """
    Run a full learning session

    Returns:
        Dictionary with the final state and query statistics, or the error
    """
    try:
        runner = LearningRunner()
        final_state = runner.run_session(teacher)
        return {
            "success": True,
            "final_state": final_state,
            "states": final_state["hypothesis"].state_count,
            "rounds": final_state.get("rounds", 0),
            "queries": teacher.log.as_dict(),
        }
    except Exception as e:
        logger.error("learning session failed: %s", e)
        return {
            "success": False,
            "error": str(e),
            "error_type": type(e).__name__,
            "exception": e,
        }
