import logging

logger = logging.getLogger(__name__)


class WorkflowVisualizer:
    def __init__(self, workflow=None):
        self.workflow = workflow

    def workflow_mermaid_code(self) -> str:
        """Mermaid code of the compiled LangGraph workflow"""
        if self.workflow is None:
            from workflow.learning_workflow import create_learning_workflow

            self.workflow = create_learning_workflow()
        try:
            return self.workflow.get_graph(xray=True).draw_mermaid()
        except Exception as e:
            logger.warning("falling back to the static learner diagram: %s", e)
            return self.fallback_mermaid()

    @staticmethod
    def fallback_mermaid() -> str:
        return """graph TD
    __start__([start]) --> close_table
    close_table --> build_hypothesis
    build_hypothesis --> consistency_query
    consistency_query -.->|YES| __end__([end])
    consistency_query -.->|counterexample| process_counterexample
    process_counterexample --> close_table
"""
