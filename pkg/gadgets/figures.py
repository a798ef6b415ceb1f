# ==================== EXAMPLE AUTOMATA ====================
# File: gadgets/figures.py

"""Small automata illustrating non-unique approximate minimization.

``a1`` branches to 0, 1/2 and 1 on its first letter; ``a2`` and ``a3`` are
two non-equivalent 3-state automata within 1/4 of it. ``aexp(n)`` glues
``n`` scaled copies of ``a1`` below a ternary tree, and ``fig4_*`` are the
automata of different sizes that are all rigid 1/4-approximations of the
same language.
"""

import itertools
from fractions import Fraction
from typing import Callable, Dict, List

from core.alphabet import Alphabet
from core.automaton import Automaton
from core.errors import InputError
from gadgets.builder import GadgetBuilder

ABC = Alphabet.of("abc")
AB = Alphabet.of("ab")


def _root_split(values: Dict[str, Fraction]) -> Automaton:
    builder = GadgetBuilder(ABC)
    root = builder.state()
    for letter, value in values.items():
        builder.to_sink(root, letter, value)
    return builder.build(root)


def a1() -> Automaton:
    return _root_split({"a": Fraction(0), "b": Fraction(1, 2), "c": Fraction(1)})


def a2() -> Automaton:
    return _root_split({"a": Fraction(1, 4), "b": Fraction(1, 4), "c": Fraction(1)})


def a3() -> Automaton:
    return _root_split({"a": Fraction(0), "b": Fraction(3, 4), "c": Fraction(3, 4)})


def _tree_depth(n: int) -> int:
    depth = 0
    while 3 ** depth < n:
        depth += 1
    return depth


def _blocks(n: int, block: Callable[[GadgetBuilder, int, int], None]) -> Automaton:
    """Ternary tree of least depth with ``n`` leaves or more; leaf k hosts block min(k, n-1)."""
    if n < 1:
        raise InputError("n must be at least 1")
    builder = GadgetBuilder(ABC)
    root = builder.state()
    depth = _tree_depth(n)
    roots: List[int] = [root] if depth == 0 else [builder.state() for _ in range(n)]
    level = [root]
    for d in range(depth):
        last = d == depth - 1
        following = []
        for node in level:
            for letter in ABC:
                if last:
                    leaf = len(following)
                    following.append(leaf)
                    builder.edge(node, letter, roots[min(leaf, n - 1)])
                else:
                    child = builder.state()
                    following.append(child)
                    builder.edge(node, letter, child)
        level = following
    for i, block_root in enumerate(roots):
        block(builder, block_root, i)
    return builder.build(root).trimmed()


def aexp(n: int) -> Automaton:
    """``n`` blocks; block i sends a, b, c to the values (4i, 4i+1, 4i+2) / 4n."""
    def block(builder: GadgetBuilder, root: int, i: int) -> None:
        for offset, letter in enumerate("abc"):
            builder.to_sink(root, letter, Fraction(4 * i + offset, 4 * n))

    return _blocks(n, block)


def exp_rigid_family(n: int) -> List[Automaton]:
    """All 2ⁿ blockwise choices of an a2-shaped or a3-shaped block.

    Each member is a rigid 1/(8n)-approximation of ``aexp(n)`` and no two
    members are almost equivalent.
    """
    scale = 4 * n
    family = []
    for choice in itertools.product((False, True), repeat=n):
        def block(builder: GadgetBuilder, root: int, i: int, choice=choice) -> None:
            if choice[i]:
                values = (Fraction(4 * i, scale), Fraction(8 * i + 3, 2 * scale), Fraction(8 * i + 3, 2 * scale))
            else:
                values = (Fraction(8 * i + 1, 2 * scale), Fraction(8 * i + 1, 2 * scale), Fraction(4 * i + 2, scale))
            for letter, value in zip("abc", values):
                builder.to_sink(root, letter, value)

        family.append(_blocks(n, block))
    return family


def fig4_a(n: int) -> Automaton:
    """Letter 1 picks a branch, letter n+1 decides: (a, a) → 0, (b, b) → 1, mixed → 1/2."""
    if n < 1:
        raise InputError("n must be at least 1")
    builder = GadgetBuilder(AB)
    root = builder.state()
    for first, outcomes in (("a", (0, Fraction(1, 2))), ("b", (Fraction(1, 2), 1))):
        node = builder.state()
        builder.edge(root, first, node)
        for _ in range(n - 1):
            following = builder.state()
            for letter in AB:
                builder.edge(node, letter, following)
            node = following
        builder.to_sink(node, "a", outcomes[0])
        builder.to_sink(node, "b", outcomes[1])
    return builder.build(root)


def fig4_al(n: int) -> Automaton:
    """Forgets the first letter; letter n+1 decides between 1/4 and 3/4 (n+3 states)."""
    if n < 1:
        raise InputError("n must be at least 1")
    builder = GadgetBuilder(AB)
    node = root = builder.state()
    for _ in range(n):
        following = builder.state()
        for letter in AB:
            builder.edge(node, letter, following)
        node = following
    builder.to_sink(node, "a", Fraction(1, 4))
    builder.to_sink(node, "b", Fraction(3, 4))
    return builder.build(root)


def fig4_as() -> Automaton:
    """The first letter decides between 1/4 and 3/4 (3 states)."""
    builder = GadgetBuilder(AB)
    root = builder.state()
    builder.to_sink(root, "a", Fraction(1, 4))
    builder.to_sink(root, "b", Fraction(3, 4))
    return builder.build(root)


FIGURES = {
    "A1": lambda n: a1(),
    "A2": lambda n: a2(),
    "A3": lambda n: a3(),
    "Aexp": aexp,
    "Fig4A": fig4_a,
    "Fig4AL": fig4_al,
    "Fig4AS": lambda n: fig4_as(),
}


def gadget_figures(name: str, n: int = 1) -> Automaton:
    try:
        factory = FIGURES[name]
    except KeyError:
        raise InputError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}") from None
    return factory(n)
