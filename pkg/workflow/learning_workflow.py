# ==================== LEARNING WORKFLOW ====================
# File: workflow/learning_workflow.py

from langgraph.graph import StateGraph, END
from state.learner_state import LearnerState

from nodes.close_table_node import close_table_node
from nodes.hypothesis_node import build_hypothesis_node
from nodes.consistency_node import consistency_query_node, route_after_consistency
from nodes.counterexample_node import process_counterexample_node


def create_learning_workflow():
    """
    Observation-table learner as a LangGraph loop:
    close table → build hypothesis → consistency query → (YES: end | counterexample → close table)
    """

    workflow = StateGraph(LearnerState)

    workflow.add_node("close_table", close_table_node)
    workflow.add_node("build_hypothesis", build_hypothesis_node)
    workflow.add_node("consistency_query", consistency_query_node)
    workflow.add_node("process_counterexample", process_counterexample_node)

    workflow.set_entry_point("close_table")

    workflow.add_edge("close_table", "build_hypothesis")
    workflow.add_edge("build_hypothesis", "consistency_query")
    workflow.add_conditional_edges(
        "consistency_query",
        route_after_consistency,
        {
            "end": END,
            "process_counterexample": "process_counterexample"
        }
    )
    workflow.add_edge("process_counterexample", "close_table")

    return workflow.compile()
