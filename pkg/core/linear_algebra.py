# ==================== EXACT LINEAR ALGEBRA ====================
# File: core/linear_algebra.py

"""Gaussian elimination over ``Fraction`` using numpy object arrays.

Pivoting always takes the first nonzero entry in column order, so results
are deterministic for equal inputs.
"""

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import InvariantError

ZERO = Fraction(0)
ONE = Fraction(1)

LinearForm = Dict[Hashable, Fraction]
Equation = Tuple[LinearForm, Fraction]


def fraction_matrix(rows: int, cols: int) -> np.ndarray:
    return np.full((rows, cols), ZERO, dtype=object)


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Solve ``M X = B`` for a nonsingular square ``M`` with several right-hand sides.

    ``rhs`` is given row-wise (one row per equation, one column per system).
    """
    n = len(matrix)
    if n == 0:
        return []
    width = len(rhs[0]) if rhs else 0
    X = np.array([[Fraction(v) for v in row] for row in matrix], dtype=object).reshape(n, n)
    Y = np.array([[Fraction(v) for v in row] for row in rhs], dtype=object).reshape(n, width)

    for i in range(n):
        for j in range(i, n):
            if X[j, i] != 0:
                if j != i:
                    X[[i, j]] = X[[j, i]]
                    Y[[i, j]] = Y[[j, i]]
                break
        else:
            raise InvariantError("singular linear system")

        pivot = X[i, i]
        X[i, :] = X[i, :] / pivot
        Y[i, :] = Y[i, :] / pivot
        for j in range(n):
            if j != i and X[j, i] != 0:
                factor = X[j, i]
                X[j, :] = X[j, :] - factor * X[i, :]
                Y[j, :] = Y[j, :] - factor * Y[i, :]

    return [[Fraction(v) for v in row] for row in Y.tolist()]


def solve_equalities(equations: Sequence[Equation]) -> Optional[Dict[Hashable, Fraction]]:
    """One solution of a (possibly underdetermined) system, free variables set to 0.

    Returns ``None`` when the system is inconsistent.
    """
    variables = _variables(equations)
    column = {var: k for k, var in enumerate(variables)}
    rows, cols = len(equations), len(variables)
    A = fraction_matrix(rows, cols + 1)
    for r, (form, constant) in enumerate(equations):
        for var, coef in form.items():
            A[r, column[var]] += Fraction(coef)
        A[r, cols] = Fraction(constant)

    pivots: List[Tuple[int, int]] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        for r in range(row, rows):
            if A[r, col] != 0:
                break
        else:
            continue
        if r != row:
            A[[row, r]] = A[[r, row]]
        A[row, :] = A[row, :] / A[row, col]
        for r2 in range(rows):
            if r2 != row and A[r2, col] != 0:
                A[r2, :] = A[r2, :] - A[r2, col] * A[row, :]
        pivots.append((row, col))
        row += 1

    for r in range(row, rows):
        if A[r, cols] != 0:
            return None

    solution = {var: ZERO for var in variables}
    for r, col in pivots:
        solution[variables[col]] = Fraction(A[r, cols])
    return solution


def evaluate_form(form: LinearForm, assignment: Dict[Hashable, Fraction]) -> Fraction:
    return sum((Fraction(coef) * assignment.get(var, ZERO) for var, coef in form.items()), ZERO)


def add_forms(*forms: LinearForm, scale: Sequence[Fraction] = ()) -> LinearForm:
    """Sum of forms, optionally each multiplied by the matching entry of ``scale``."""
    total: LinearForm = {}
    for k, form in enumerate(forms):
        factor = scale[k] if scale else ONE
        for var, coef in form.items():
            total[var] = total.get(var, ZERO) + factor * coef
    return {var: coef for var, coef in total.items() if coef != 0}


def _variables(equations: Sequence[Equation]) -> List[Hashable]:
    seen: Dict[Hashable, None] = {}
    for form, _ in equations:
        for var in form:
            seen.setdefault(var, None)
    return list(seen)
