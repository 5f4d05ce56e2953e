"""Dense two-phase simplex solver for small linear programs.

Solves min c.x subject to A x <= b, x >= 0. Equality constraints are encoded
by the caller as opposing inequality pairs. The implementation is a textbook
tableau method with Bland's anti-cycling pivot rule, which is plenty for the
tiny, well-scaled programs produced by the reweighting solvers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    objective: float


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = col


def _bland_iterate(
    tableau: np.ndarray,
    basis: np.ndarray,
    cost: np.ndarray,
    allowed: np.ndarray,
    max_iters: int,
) -> None:
    """Run simplex iterations on (tableau, cost) until optimality.

    ``cost`` is the reduced-cost row (same column count as the tableau, last
    entry holding the negated objective). ``allowed`` masks columns that may
    enter the basis.
    """
    m = tableau.shape[0]
    for _ in range(max_iters):
        entering = -1
        for j in range(tableau.shape[1] - 1):
            if allowed[j] and cost[j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return
        best_ratio = np.inf
        leaving = -1
        for i in range(m):
            coef = tableau[i, entering]
            if coef > PIVOT_TOL:
                ratio = tableau[i, -1] / coef
                if ratio < best_ratio - PIVOT_TOL or (
                    ratio < best_ratio + PIVOT_TOL
                    and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    best_ratio = min(ratio, best_ratio)
                    leaving = i
        if leaving < 0:
            raise ValueError("LP is unbounded")
        _pivot(tableau, basis, leaving, entering)
        cost -= cost[entering] * tableau[leaving]
    raise ArithmeticError(f"simplex iteration cap exceeded ({max_iters} pivots)")


def solve_lp(c, a_ub, b_ub, max_iters: int = 10000) -> LPResult:
    """Minimize ``c . x`` subject to ``a_ub @ x <= b_ub`` and ``x >= 0``."""
    c = np.asarray(c, dtype=float)
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    if a.ndim != 2:
        raise ValueError("constraint matrix must be two-dimensional")
    m, n = a.shape
    if c.shape != (n,) or b.shape != (m,) or m == 0 or n == 0:
        raise ValueError("inconsistent LP dimensions")
    if not (np.all(np.isfinite(c)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("LP data must be finite")

    # Tableau columns: n structural, m slack, then one artificial per row whose
    # right-hand side is negative (after sign normalization), then the RHS.
    negative = b < 0
    n_art = int(negative.sum())
    width = n + m + n_art + 1
    tableau = np.zeros((m, width))
    tableau[:, :n] = a
    tableau[:, n : n + m] = np.eye(m)
    tableau[:, -1] = b
    tableau[negative] *= -1.0
    basis = np.empty(m, dtype=int)
    art_index = n + m
    for i in range(m):
        if negative[i]:
            tableau[i, art_index] = 1.0
            basis[i] = art_index
            art_index += 1
        else:
            basis[i] = n + i

    allowed = np.ones(width - 1, dtype=bool)
    if n_art:
        phase1 = np.zeros(width)
        phase1[n + m : n + m + n_art] = 1.0
        for i in range(m):
            if basis[i] >= n + m:
                phase1 -= tableau[i]
        _bland_iterate(tableau, basis, phase1, allowed, max_iters)
        if -phase1[-1] > 1e-8:
            raise ValueError("LP is infeasible")
        for i in range(m):
            if basis[i] >= n + m:
                # Degenerate artificial still in the basis: pivot it out on any
                # usable structural or slack column, else the row is redundant.
                for j in range(n + m):
                    if abs(tableau[i, j]) > PIVOT_TOL:
                        _pivot(tableau, basis, i, j)
                        break
        keep = basis < n + m
        tableau = np.hstack([tableau[keep, : n + m], tableau[keep, -1:]])
        basis = basis[keep]
        allowed = np.ones(n + m, dtype=bool)

    cost = np.zeros(tableau.shape[1])
    cost[:n] = c
    for i, var in enumerate(basis):
        if var < n and cost[var] != 0.0:
            cost -= cost[var] * tableau[i]
    _bland_iterate(tableau, basis, cost, allowed, max_iters)

    x = np.zeros(n)
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i, -1]
    x[np.abs(x) < PIVOT_TOL] = 0.0
    return LPResult(x=x, objective=float(c @ x))
