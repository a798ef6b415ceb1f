# ==================== LEARNER ENTRY POINT ====================
# File: learning/learner.py

from dataclasses import dataclass
from typing import Any, Dict, Tuple

from core.automaton import Automaton
from learning.teacher import Teacher
from utils.learning_runner import run_learning


@dataclass(frozen=True)
class LearnResult:
    automaton: Automaton
    expectation_queries: int
    consistency_queries: int
    total_query_length: int
    rounds: int
    counterexample_lengths: Tuple[int, ...]
    history: Tuple[Dict[str, Any], ...]

    def stats(self) -> Dict[str, Any]:
        return {
            "states": self.automaton.state_count,
            "expectation_queries": self.expectation_queries,
            "consistency_queries": self.consistency_queries,
            "total_query_length": self.total_query_length,
            "rounds": self.rounds,
            "counterexample_lengths": list(self.counterexample_lengths),
        }


def learn(teacher: Teacher) -> LearnResult:
    """Almost-exact learning with expectation and 0-consistency queries."""
    result = run_learning(teacher)
    if not result["success"]:
        raise result["exception"]
    final_state = result["final_state"]
    return LearnResult(
        automaton=final_state["hypothesis"],
        expectation_queries=teacher.log.expectation_queries,
        consistency_queries=teacher.log.consistency_queries,
        total_query_length=teacher.log.total_length,
        rounds=final_state["rounds"],
        counterexample_lengths=tuple(final_state["counterexample_lengths"]),
        history=tuple(final_state["history"]),
    )
