# ==================== LEARNER STATE ====================
# File: state/learner_state.py

from typing import Any, Dict, List, Optional, TypedDict

from core.automaton import Automaton
from learning.observation_table import ObservationTable
from learning.teacher import Teacher


class LearnerState(TypedDict):
    """
    State flowing through the learning workflow
    """

    # ===== CORE DATA =====
    teacher: Teacher
    table: ObservationTable
    hypothesis: Optional[Automaton]
    counterexample: Optional[tuple]

    # ===== PROGRESS =====
    rounds: int
    counterexample_lengths: List[int]
    converged: bool

    # ===== HISTORY =====
    history: List[Dict[str, Any]]
