# ==================== SAT0 REDUCTIONS ====================
# File: gadgets/sat0.py

"""Sample-fitting instances built from monotone-clause CNF formulas.

Clause Cᵢ is paired with variable xᵢ, so a formula has as many clauses as
variables. The U-sample has a fitting automaton with n states iff the
formula is satisfiable; the E-sample is the same sample with every
``(u, v, x)`` flattened to ``(uv, x)`` and is fitted by the canonical
automaton with n+2 states when the formula is satisfiable.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.alphabet import Alphabet
from core.automaton import Automaton
from core.errors import InputError
from measures.sample import Sample

logger = logging.getLogger(__name__)

Valuation = Tuple[bool, ...]


class Variant(str, Enum):
    U = "U"
    E = "E"


@dataclass(frozen=True)
class Clause:
    """A non-empty set of 1-based variable indices, all positive or all negated."""

    variables: FrozenSet[int]
    positive: bool

    def __post_init__(self):
        object.__setattr__(self, "variables", frozenset(self.variables))
        if not self.variables:
            raise InputError("clauses must be non-empty")

    def satisfied_by(self, valuation: Valuation) -> bool:
        return any(valuation[x - 1] == self.positive for x in self.variables)


@dataclass(frozen=True)
class Sat0Formula:
    variable_count: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.variable_count < 1:
            raise InputError("a formula needs at least one variable")
        if len(self.clauses) != self.variable_count:
            raise InputError(
                f"{len(self.clauses)} clauses for {self.variable_count} variables; the reduction pairs them one to one"
            )
        for clause in self.clauses:
            if not all(1 <= x <= self.variable_count for x in clause.variables):
                raise InputError(f"clause mentions a variable outside 1..{self.variable_count}")

    @property
    def n(self) -> int:
        return self.variable_count

    @classmethod
    def from_literals(cls, clauses: Iterable[Sequence[int]], variable_count: Optional[int] = None) -> "Sat0Formula":
        """Build from DIMACS-style literal lists, padding to a square instance.

        Missing variables are added unused; missing clauses repeat the last
        clause, which keeps satisfiability unchanged.
        """
        parsed: List[Clause] = []
        for literals in clauses:
            literals = list(literals)
            if not literals or 0 in literals:
                raise InputError(f"malformed clause {literals}")
            signs = {lit > 0 for lit in literals}
            if len(signs) != 1:
                raise InputError(f"clause {literals} mixes positive and negative literals")
            parsed.append(Clause(frozenset(abs(lit) for lit in literals), signs.pop()))
        if not parsed:
            raise InputError("a formula needs at least one clause")
        mentioned = max(max(c.variables) for c in parsed)
        n = max(variable_count or 0, mentioned, len(parsed))
        parsed.extend([parsed[-1]] * (n - len(parsed)))
        return cls(n, tuple(parsed))


def parse_dimacs(text: str) -> Sat0Formula:
    """Read a DIMACS CNF file; clauses may span lines and end with 0."""
    declared: Optional[int] = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"malformed DIMACS header {line!r}")
            try:
                declared = int(parts[2])
            except ValueError as exc:
                raise InputError(f"malformed DIMACS header {line!r}") from exc
            continue
        try:
            tokens = [int(token) for token in line.split()]
        except ValueError as exc:
            raise InputError(f"malformed DIMACS clause line {line!r}") from exc
        for literal in tokens:
            if literal == 0:
                clauses.append(current)
                current = []
            else:
                current.append(literal)
    if current:
        clauses.append(current)
    formula = Sat0Formula.from_literals(clauses, declared)
    logger.debug("read SAT0 formula with %d variables", formula.n)
    return formula


# ----- truth-table oracle -----

def satisfies(formula: Sat0Formula, valuation: Valuation) -> bool:
    if len(valuation) != formula.n:
        raise InputError(f"valuation has {len(valuation)} values for {formula.n} variables")
    return all(clause.satisfied_by(tuple(valuation)) for clause in formula.clauses)


def satisfying_valuation(formula: Sat0Formula) -> Optional[Valuation]:
    """First satisfying valuation in lexicographic order (False < True), if any."""
    for valuation in itertools.product((False, True), repeat=formula.n):
        if satisfies(formula, valuation):
            return valuation
    return None


def is_satisfiable(formula: Sat0Formula) -> bool:
    return satisfying_valuation(formula) is not None


def all_formulas(n: int) -> Iterable[Sat0Formula]:
    """Every formula with n variables and n clauses."""
    subsets = [frozenset(s) for size in range(1, n + 1) for s in itertools.combinations(range(1, n + 1), size)]
    choices = [Clause(s, positive) for s in subsets for positive in (True, False)]
    for clauses in itertools.product(choices, repeat=n):
        yield Sat0Formula(n, clauses)


# ----- samples -----

def sat0_alphabet(n: int) -> Alphabet:
    letters = [f"{kind}{i}" for kind in "acd" for i in range(1, n + 1)]
    return Alphabet.of(letters + ["b", "t"])


def _triples(formula: Sat0Formula) -> List[Tuple[Tuple[str, ...], Tuple[str, ...], int]]:
    n = formula.n
    rows = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rows.append(((f"c{i}",), (f"a{j}",), int(i == j)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rows.append(((f"c{i}",), (f"d{j}",), int(i in formula.clauses[j - 1].variables)))
    for i in range(1, n + 1):
        rows.append(((f"c{i}", "b"), (f"d{i}",), 1))
    for i in range(1, n + 1):
        rows.append(((f"c{i}", "b"), ("t",), int(formula.clauses[i - 1].positive)))
    return rows


def gadget_sat0_to_usample(formula: Sat0Formula) -> Sample:
    return Sample.u_sample(sat0_alphabet(formula.n), _triples(formula))


def gadget_sat0_to_esample(formula: Sat0Formula) -> Sample:
    return Sample.e_sample(sat0_alphabet(formula.n), ((u + v, x) for u, v, x in _triples(formula)))


# ----- canonical automata -----

def _witness(formula: Sat0Formula, valuation: Valuation, i: int) -> int:
    """Smallest variable satisfying clause i."""
    clause = formula.clauses[i - 1]
    return min(x for x in clause.variables if valuation[x - 1] == clause.positive)


def gadget_canonical_automaton(formula: Sat0Formula, valuation: Valuation, variant: Variant = Variant.U) -> Automaton:
    """The automaton fitting the U- (n states) or E-sample (n+2 states) of a satisfied formula."""
    variant = Variant(variant)
    valuation = tuple(bool(x) for x in valuation)
    if not satisfies(formula, valuation):
        raise InputError("the valuation does not satisfy the formula")
    n = formula.n
    alphabet = sat0_alphabet(n)

    def state(i: int) -> int:
        return i - 1

    rows = []
    if variant is Variant.U:
        for i in range(1, n + 1):
            q = state(i)
            for letter in alphabet:
                rows.append((q, letter, q, 0))
            for j in range(1, n + 1):
                rows.append((q, f"a{j}", q, int(i == j)))
                rows.append((q, f"d{j}", q, int(i in formula.clauses[j - 1].variables)))
            rows.append((q, "t", q, int(valuation[i - 1])))
            rows.append((q, "b", state(_witness(formula, valuation, i)), 0))
        for j in range(2, n + 1):
            rows.append((state(1), f"c{j}", state(j), 1))
        rows.append((state(1), "c1", state(1), 1))
        return Automaton.build(alphabet, n, rows)

    true, false = n, n + 1
    for letter in alphabet:
        rows.append((true, letter, true, 1))
        rows.append((false, letter, false, 0))
    for i in range(1, n + 1):
        q = state(i)
        for letter in alphabet:
            rows.append((q, letter, false, 0))
        for j in range(1, n + 1):
            rows.append((q, f"a{j}", true if i == j else false, 0))
            rows.append((q, f"d{j}", true if i in formula.clauses[j - 1].variables else false, 0))
        rows.append((q, "t", true if valuation[i - 1] else false, 0))
        rows.append((q, "b", state(_witness(formula, valuation, i)), 0))
    for j in range(1, n + 1):
        rows.append((state(1), f"c{j}", state(j), 0))
    return Automaton.build(alphabet, n + 2, rows)
