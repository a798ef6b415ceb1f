# ==================== EXACT SIMPLEX ====================
# File: core/simplex.py

"""Feasibility of mixed equality / inequality systems over the rationals.

Phase-1 simplex on a Fraction tableau with Bland's rule (lowest index enters
and leaves), which cannot cycle.
"""

import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

import numpy as np

from core.linear_algebra import ZERO, Equation, fraction_matrix, solve_equalities

logger = logging.getLogger(__name__)


def feasible_point(
    equalities: Sequence[Equation],
    inequalities: Sequence[Equation] = (),
    nonnegative: Iterable[Hashable] = (),
) -> Optional[Dict[Hashable, Fraction]]:
    """A point with ``form == c`` for every equality and ``form <= c`` for every inequality.

    Variables are free unless listed in ``nonnegative``. Returns ``None`` if
    the system is infeasible.
    """
    nonnegative = set(nonnegative)
    if not inequalities and not nonnegative:
        return solve_equalities(equalities)

    variables: Dict[Hashable, None] = {}
    for form, _ in list(equalities) + list(inequalities):
        for var in form:
            variables.setdefault(var, None)
    for var in sorted(nonnegative, key=repr):
        variables.setdefault(var, None)

    # column layout: one column per nonnegative variable, two (plus, minus) per free one
    columns: Dict[Hashable, List[int]] = {}
    width = 0
    for var in variables:
        if var in nonnegative:
            columns[var] = [width]
            width += 1
        else:
            columns[var] = [width, width + 1]
            width += 2
    slack_start = width
    width += len(inequalities)

    rows = list(equalities) + list(inequalities)
    m = len(rows)
    if m == 0:
        return {var: ZERO for var in variables}

    # tableau: [structural + slack | artificial | rhs]
    total_width = width + m + 1
    T = fraction_matrix(m + 1, total_width)
    for r, (form, constant) in enumerate(rows):
        for var, coef in form.items():
            cols = columns[var]
            T[r, cols[0]] += Fraction(coef)
            if len(cols) == 2:
                T[r, cols[1]] -= Fraction(coef)
        if r >= len(equalities):
            T[r, slack_start + r - len(equalities)] = Fraction(1)
        T[r, total_width - 1] = Fraction(constant)
        if T[r, total_width - 1] < 0:
            T[r, :] = -T[r, :]
        T[r, width + r] = Fraction(1)

    basis = [width + r for r in range(m)]
    # objective row: minimise the sum of artificials, expressed in non-basic columns
    for r in range(m):
        T[m, :] = T[m, :] - T[r, :]
    for r in range(m):
        T[m, width + r] = ZERO

    _run_simplex(T, basis, total_width - 1)

    if T[m, total_width - 1] != 0:
        return None

    values = [ZERO] * width
    for r, col in enumerate(basis):
        if col < width:
            values[col] = Fraction(T[r, total_width - 1])

    solution: Dict[Hashable, Fraction] = {}
    for var, cols in columns.items():
        solution[var] = values[cols[0]] - (values[cols[1]] if len(cols) == 2 else ZERO)
    return solution


def _run_simplex(T: np.ndarray, basis: List[int], rhs: int) -> None:
    m = len(basis)
    iterations = 0
    while True:
        entering = next((c for c in range(rhs) if T[m, c] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for r in range(m):
            if T[r, entering] > 0:
                ratio = T[r, rhs] / T[r, entering]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leaving]):
                    best, leaving = ratio, r
        if leaving is None:
            # unbounded below cannot happen: the phase-1 objective is bounded by 0
            break
        pivot = T[leaving, entering]
        T[leaving, :] = T[leaving, :] / pivot
        for r in range(m + 1):
            if r != leaving and T[r, entering] != 0:
                T[r, :] = T[r, :] - T[r, entering] * T[leaving, :]
        basis[leaving] = entering
        iterations += 1
    logger.debug("phase-1 simplex finished after %d pivots", iterations)
