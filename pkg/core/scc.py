# ==================== STRONGLY CONNECTED COMPONENTS ====================
# File: core/scc.py

from dataclasses import dataclass
from typing import Hashable, List, Sequence, Tuple

import networkx as nx

from core.automaton import Automaton


@dataclass(frozen=True)
class SccDecomposition:
    """Components numbered by their minimal member; ``order`` is topological."""

    component_of: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    is_bottom: Tuple[bool, ...]
    order: Tuple[int, ...]

    @property
    def bottoms(self) -> List[int]:
        return [c for c, bottom in enumerate(self.is_bottom) if bottom]

    def __len__(self) -> int:
        return len(self.components)


def decompose_graph(graph: nx.DiGraph) -> SccDecomposition:
    """SCCs of a graph whose nodes are ``0..n-1``."""
    components = sorted((tuple(sorted(c)) for c in nx.strongly_connected_components(graph)), key=lambda c: c[0])

    component_of: List[int] = [0] * graph.number_of_nodes()
    for cid, members in enumerate(components):
        for node in members:
            component_of[node] = cid

    is_bottom = [True] * len(components)
    for source, target in graph.edges():
        if component_of[source] != component_of[target]:
            is_bottom[component_of[source]] = False

    condensed = nx.condensation(graph, scc=[set(c) for c in components])
    order = tuple(nx.lexicographical_topological_sort(condensed))

    return SccDecomposition(tuple(component_of), tuple(components), tuple(is_bottom), order)


def scc_decompose(automaton: Automaton) -> SccDecomposition:
    return decompose_graph(automaton.transition_graph())


def successors_graph(node_count: int, successors: Sequence[Sequence[Hashable]]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(node_count))
    for source, targets in enumerate(successors):
        for target in targets:
            graph.add_edge(source, target)
    return graph
