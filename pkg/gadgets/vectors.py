# ==================== VECTOR REDUCTIONS ====================
# File: gadgets/vectors.py

"""Vector problems behind the hardness of (rigid) approximate minimization.

Both reductions encode a vector family as the two-letter lookup language
``L(aᵢ aⱼ w) = vᵢ[j]``. Binary k-median instances go through a padded
variant first; the 1/4-vector cover instances come from dominating sets.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from core.alphabet import Alphabet
from core.automaton import Automaton
from core.errors import InputError
from core.rational import parse_rational
from gadgets.builder import GadgetBuilder

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)


class BkmpVariant(str, Enum):
    APPENDIX_A = "appendixA"
    APPENDIX_B = "appendixB"


@dataclass(frozen=True)
class VectorInstance:
    """Vectors over {0, 1/2, 1}, the center count ``k`` and an optional L1 budget ``t``.

    ``padding`` is the alignment block length ``h`` of padded k-median
    instances and ``None`` elsewhere.
    """

    vectors: Tuple[Vector, ...]
    k: int
    t: Optional[int] = None
    padding: Optional[int] = None

    def __post_init__(self):
        vectors = tuple(tuple(parse_rational(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if not vectors:
            raise InputError("a vector instance needs at least one vector")
        width = len(vectors[0])
        if width == 0 or any(len(v) != width for v in vectors):
            raise InputError("all vectors must have the same positive length")
        for v in vectors:
            if any(x not in (0, HALF, 1) for x in v):
                raise InputError(f"vector entries must be 0, 1/2 or 1: {[str(x) for x in v]}")
        if self.k < 0 or (self.t is not None and self.t < 0):
            raise InputError("k and t must be non-negative")

    @property
    def dimension(self) -> int:
        return len(self.vectors[0])

    @property
    def is_boolean(self) -> bool:
        return all(x in (0, 1) for v in self.vectors for x in v)


def lookup_alphabet(size: int) -> Alphabet:
    return Alphabet.of([f"a{i}" for i in range(1, size + 1)])


def l1_distance(left: Sequence[Fraction], right: Sequence[Fraction]) -> Fraction:
    return sum((abs(x - y) for x, y in zip(left, right)), Fraction(0))


def linf_distance(left: Sequence[Fraction], right: Sequence[Fraction]) -> Fraction:
    return max(abs(x - y) for x, y in zip(left, right))


# ----- binary k-median -----

def modify_bkmp(instance: VectorInstance, h: Optional[int] = None) -> VectorInstance:
    """v ↦ v · (1 - v) · 1^h · 0^h, plus the constant vectors, with budget (k + 2, 2t)."""
    if not instance.is_boolean:
        raise InputError("k-median instances need Boolean vectors")
    if instance.t is None:
        raise InputError("k-median instances need a budget t")
    m, n = instance.dimension, len(instance.vectors)
    if h is None:
        h = max(2 * instance.t, m, n) + 1
    if h <= max(2 * instance.t, m, n):
        raise InputError(f"padding h={h} must exceed max(2t, m, n)")
    one, zero = Fraction(1), Fraction(0)
    padded: List[Vector] = []
    for v in instance.vectors:
        starred = v + tuple(1 - x for x in v) + (one,) * h + (zero,) * h
        if starred not in padded:
            padded.append(starred)
    for constant in ((zero,) * (2 * m + 2 * h), (one,) * (2 * m + 2 * h)):
        if constant not in padded:
            padded.append(constant)
    return VectorInstance(tuple(padded), instance.k + 2, 2 * instance.t, h)


def modified_bkmp_conditions(instance: VectorInstance) -> Dict[str, bool]:
    """The three structural conditions of a padded k-median instance."""
    if instance.padding is None:
        raise InputError("the instance carries no padding length")
    h, size = instance.padding, instance.dimension
    m2 = size - 2 * h
    zero, one = (Fraction(0),) * size, (Fraction(1),) * size
    others = [v for v in instance.vectors if v not in (zero, one)]
    return {
        "C1": zero in instance.vectors and one in instance.vectors,
        "C2": all(2 * sum(v) == size for v in others),
        "C3": m2 >= 0 and all(all(x == 1 for x in v[m2:m2 + h]) and all(x == 0 for x in v[m2 + h:]) for v in others),
    }


def _padding_split(instance: VectorInstance) -> Tuple[int, int]:
    count, size = len(instance.vectors), instance.dimension
    if size < count or (size - count) % 2:
        raise InputError(f"{count} vectors of length {size}: the length must exceed the count by an even number")
    return count, (size - count) // 2


def _bkmp_lookup(instance: VectorInstance) -> Automaton:
    """Root, one state per vector, sinks 0 and 1; padding letters split between the sinks."""
    if not instance.is_boolean:
        raise InputError("the k-median lookup automaton needs Boolean vectors")
    count, pad = _padding_split(instance)
    alphabet = lookup_alphabet(instance.dimension)
    builder = GadgetBuilder(alphabet)
    root = builder.state()
    rows = [builder.state() for _ in instance.vectors]
    builder.sink(0)
    builder.sink(1)
    letters = alphabet.letters
    for i, v in enumerate(instance.vectors):
        builder.edge(root, letters[i], rows[i])
        for j, x in enumerate(v):
            builder.to_sink(rows[i], letters[j], x)
    for index in range(count, instance.dimension):
        builder.to_sink(root, letters[index], 0 if index < count + pad else 1)
    return builder.build(root)


def _cover_lookup(instance: VectorInstance) -> Automaton:
    """Root, one state per vector, sinks 0, 1/2 and 1 (n + 4 states)."""
    count = len(instance.vectors)
    if instance.dimension != count:
        raise InputError("1/4-vector cover instances need n vectors of length n")
    alphabet = lookup_alphabet(count)
    builder = GadgetBuilder(alphabet)
    root = builder.state()
    rows = [builder.state() for _ in instance.vectors]
    for value in (0, HALF, 1):
        builder.sink(value)
    letters = alphabet.letters
    for i, v in enumerate(instance.vectors):
        builder.edge(root, letters[i], rows[i])
        for j, x in enumerate(v):
            builder.to_sink(rows[i], letters[j], x)
    return builder.build(root)


def gadget_bkmp(instance: VectorInstance, variant: BkmpVariant = BkmpVariant.APPENDIX_B) -> Automaton:
    """The tree-like automaton with E(A | aᵢ aⱼ) = vᵢ[j]."""
    if BkmpVariant(variant) is BkmpVariant.APPENDIX_A:
        return _bkmp_lookup(instance)
    return _cover_lookup(instance)


def _assign(vectors: Sequence[Vector], centers: Sequence[Vector], assignment: Optional[Sequence[int]], cost, bound=None) -> List[int]:
    """The given assignment, checked, or every vector sent to its cheapest center."""
    if not centers:
        raise InputError("at least one center is needed")
    if assignment is None:
        assignment = []
        for v in vectors:
            best = min(range(len(centers)), key=lambda c: (cost(v, centers[c]), c))
            if bound is not None and cost(v, centers[best]) > bound:
                raise InputError(f"no center covers {[str(x) for x in v]}")
            assignment.append(best)
    assignment = list(assignment)
    if len(assignment) != len(vectors) or any(not 0 <= c < len(centers) for c in assignment):
        raise InputError("the assignment must map every vector to a center index")
    return assignment


def bkmp_solution_automaton(
    instance: VectorInstance,
    centers: Sequence[Sequence[Fraction]],
    assignment: Optional[Sequence[int]] = None,
) -> Automaton:
    """The approximation built from a k-median solution whose centers include 0 and 1.

    States are the root plus one state per center; the constant centers are
    the sinks the other center states branch into.
    """
    count, pad = _padding_split(instance)
    size = instance.dimension
    centers = [tuple(parse_rational(x) for x in u) for u in centers]
    if any(len(u) != size or any(x not in (0, 1) for x in u) for u in centers):
        raise InputError("centers must be Boolean vectors of the instance's length")
    zero, one = (Fraction(0),) * size, (Fraction(1),) * size
    if zero not in centers or one not in centers:
        raise InputError("the centers must include the constant vectors 0 and 1")
    assignment = _assign(instance.vectors, centers, assignment, l1_distance)

    alphabet = lookup_alphabet(size)
    letters = alphabet.letters
    builder = GadgetBuilder(alphabet)
    root = builder.state()
    states = []
    for u in centers:
        if u == zero:
            states.append(builder.sink(0))
        elif u == one:
            states.append(builder.sink(1))
        else:
            states.append(builder.state())
    for c, u in enumerate(centers):
        if u in (zero, one):
            continue
        for j, x in enumerate(u):
            builder.to_sink(states[c], letters[j], x)
    for i, c in enumerate(assignment):
        builder.edge(root, letters[i], states[c])
    for index in range(count, size):
        builder.edge(root, letters[index], builder.sink(0 if index < count + pad else 1))
    return builder.build(root)


def bkmp_cost(instance: VectorInstance, centers: Sequence[Sequence[Fraction]], assignment: Sequence[int]) -> Fraction:
    centers = [tuple(parse_rational(x) for x in u) for u in centers]
    return sum((l1_distance(v, centers[c]) for v, c in zip(instance.vectors, assignment)), Fraction(0))


# ----- 1/4-vector cover -----

def vector_cover_automaton(
    instance: VectorInstance,
    centers: Sequence[Sequence[Fraction]],
    assignment: Optional[Sequence[int]] = None,
) -> Automaton:
    """Root, one state per center and sinks 1/4 and 3/4 (k + 3 states)."""
    count = len(instance.vectors)
    if instance.dimension != count:
        raise InputError("1/4-vector cover instances need n vectors of length n")
    centers = [tuple(parse_rational(x) for x in u) for u in centers]
    if any(len(u) != count or any(x not in (QUARTER, THREE_QUARTERS) for x in u) for u in centers):
        raise InputError("centers must be vectors over {1/4, 3/4} of the instance's length")
    assignment = _assign(instance.vectors, centers, assignment, linf_distance, QUARTER)

    alphabet = lookup_alphabet(count)
    letters = alphabet.letters
    builder = GadgetBuilder(alphabet)
    root = builder.state()
    states = [builder.state() for _ in centers]
    builder.sink(QUARTER)
    builder.sink(THREE_QUARTERS)
    for c, u in enumerate(centers):
        for j, x in enumerate(u):
            builder.to_sink(states[c], letters[j], x)
    for i, c in enumerate(assignment):
        builder.edge(root, letters[i], states[c])
    return builder.build(root)


def _vertices(graph: nx.Graph) -> List:
    try:
        return sorted(graph.nodes)
    except TypeError as exc:
        raise InputError("graph vertices must be mutually comparable") from exc


def subdivide_edges(graph: nx.Graph, length: int = 5) -> nx.Graph:
    """Replace every edge by a path with ``length`` edges; vertices become 0..N-1.

    The original vertices keep the first indices in sorted order.
    """
    if length < 1 or length % 2 == 0:
        raise InputError("subdivision paths must have an odd number of edges")
    vertices = _vertices(graph)
    index = {v: i for i, v in enumerate(vertices)}
    result = nx.Graph()
    result.add_nodes_from(range(len(vertices)))
    fresh = len(vertices)
    for u, v in sorted((min(index[a], index[b]), max(index[a], index[b])) for a, b in graph.edges):
        path = [u] + list(range(fresh, fresh + length - 1)) + [v]
        fresh += length - 1
        nx.add_path(result, path)
    return result


def dominating_set_to_vectors(graph: nx.Graph, k: int = 0, subdivide: bool = False) -> VectorInstance:
    """vⱼ[i] = 1 on the diagonal, 1/2 within distance 2, else 0."""
    if subdivide:
        graph = subdivide_edges(graph)
    if nx.number_of_selfloops(graph):
        raise InputError("the graph must be simple")
    girth = nx.girth(graph)
    if girth < 5:
        raise InputError(f"the graph has girth {girth}; subdivide its edges first")
    vertices = _vertices(graph)
    vectors = []
    for b in vertices:
        near = nx.single_source_shortest_path_length(graph, b, cutoff=2)
        vectors.append(tuple(Fraction(1) if c == b else (HALF if c in near else Fraction(0)) for c in vertices))
    logger.debug("dominating set instance with %d vertices", len(vertices))
    return VectorInstance(tuple(vectors), k)


def dominating_set_centers(graph: nx.Graph, dominating_set: Iterable) -> List[Vector]:
    """uᵢ[j] = 3/4 on the closed neighbourhood of the i-th dominating vertex, else 1/4."""
    chosen = list(dominating_set)
    if not nx.is_dominating_set(graph, chosen):
        raise InputError("the given vertices do not dominate the graph")
    vertices = _vertices(graph)
    centers = []
    for d in chosen:
        closed = set(graph.neighbors(d)) | {d}
        centers.append(tuple(THREE_QUARTERS if b in closed else QUARTER for b in vertices))
    return centers
