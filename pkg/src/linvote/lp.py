"""Exact linear programming over rationals.

A small two-phase simplex with Bland's anti-cycling rule, specialized for the
feasibility and tiny optimization problems the learners pose (at most a few
hundred variables). Everything is a Fraction; there is no floating-point
fallback, so "infeasible" answers are exact.

Variables passed in are free; internally each is split into a difference of
two nonnegative variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError

LE = "<="
GE = ">="
EQ = "="

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LpResult:
    status: str  # 'optimal' | 'infeasible' | 'unbounded'
    x: list | None = None
    objective: Fraction | None = None


def solve_lp(constraints, num_vars, objective=None):
    """Minimize objective . x subject to constraints over free variables.

    constraints: iterable of (coeffs, relation, rhs) with relation one of
    '<=', '>=', '='. objective=None means pure feasibility. Returns LpResult;
    x is a point in the original free-variable space when one exists.
    """
    cons = []
    for coeffs, rel, rhs in constraints:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != num_vars:
            raise DomainError(f"constraint arity {len(coeffs)} != {num_vars}")
        if rel not in (LE, GE, EQ):
            raise DomainError(f"bad relation {rel!r}")
        cons.append((coeffs, rel, Fraction(rhs)))
    if objective is None:
        objective = [_ZERO] * num_vars
    else:
        objective = [Fraction(c) for c in objective]
        if len(objective) != num_vars:
            raise DomainError("objective arity mismatch")

    num_split = 2 * num_vars
    num_slacks = sum(1 for _, rel, _ in cons if rel != EQ)
    num_cols = num_split + num_slacks

    rows = []
    slack_used = 0
    for coeffs, rel, rhs in cons:
        row = [_ZERO] * num_cols
        for i, c in enumerate(coeffs):
            row[i] = c
            row[num_vars + i] = -c
        if rel != EQ:
            slack_col = num_split + slack_used
            slack_used += 1
            row[slack_col] = _ONE if rel == LE else -_ONE
        if rhs < 0:
            row = [-c for c in row]
            rhs = -rhs
        rows.append((row, rhs))

    # Attach artificials where no slack provides a starting unit column.
    tableau = []
    basis = []
    artificial_cols = []
    for row, rhs in rows:
        basic_col = None
        for j in range(num_split, num_cols):
            if row[j] == 1 and all(
                other[j] == 0 for other, _ in rows if other is not row
            ):
                basic_col = j
                break
        if basic_col is None:
            basic_col = num_cols + len(artificial_cols)
            artificial_cols.append(basic_col)
        tableau.append((row, rhs, basic_col))

    total_cols = num_cols + len(artificial_cols)
    grid = []
    basis = []
    for row, rhs, basic_col in tableau:
        full = row + [_ZERO] * len(artificial_cols) + [rhs]
        if basic_col >= num_cols:
            full[basic_col] = _ONE
        grid.append(full)
        basis.append(basic_col)

    art_set = set(artificial_cols)
    if art_set:
        phase1_cost = [
            _ONE if j in art_set else _ZERO for j in range(total_cols)
        ]
        status = _simplex(grid, basis, phase1_cost, total_cols)
        if status != "optimal":  # phase 1 is bounded below by 0
            raise AssertionError("phase 1 cannot be unbounded")
        if _objective_value(grid, basis, phase1_cost) > 0:
            return LpResult("infeasible")
        _drive_out_artificials(grid, basis, art_set, num_cols)

    phase2_cost = [_ZERO] * total_cols
    for i, c in enumerate(objective):
        phase2_cost[i] = c
        phase2_cost[num_vars + i] = -c
    status = _simplex(grid, basis, phase2_cost, total_cols, forbidden=art_set)
    if status == "unbounded":
        return LpResult("unbounded")

    values = {}
    for r, b in enumerate(basis):
        values[b] = grid[r][-1]
    x = [
        values.get(i, _ZERO) - values.get(num_vars + i, _ZERO)
        for i in range(num_vars)
    ]
    obj = sum((c * v for c, v in zip(objective, x)), _ZERO)
    return LpResult("optimal", x, obj)


def _objective_value(grid, basis, cost, rhs_index=-1):
    return sum((cost[b] * grid[r][rhs_index] for r, b in enumerate(basis)), _ZERO)


def _reduced_cost(grid, basis, cost, j):
    return cost[j] - sum(
        (cost[b] * grid[r][j] for r, b in enumerate(basis)), _ZERO
    )


def _pivot(grid, basis, row, col):
    piv = grid[row][col]
    grid[row] = [c / piv for c in grid[row]]
    for r in range(len(grid)):
        if r != row and grid[r][col]:
            factor = grid[r][col]
            grid[r] = [a - factor * b for a, b in zip(grid[r], grid[row])]
    basis[row] = col


def _simplex(grid, basis, cost, total_cols, forbidden=()):
    """Minimize cost over the tableau in place. Bland's rule throughout."""
    while True:
        entering = None
        for j in range(total_cols):
            if j in forbidden or j in basis:
                continue
            if _reduced_cost(grid, basis, cost, j) < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best_ratio = None
        for r in range(len(grid)):
            coeff = grid[r][entering]
            if coeff > 0:
                ratio = grid[r][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving is None:
            return "unbounded"
        _pivot(grid, basis, leaving, entering)


def _drive_out_artificials(grid, basis, art_set, num_cols):
    """Pivot artificial variables out of the basis (or drop dead rows)."""
    r = 0
    while r < len(grid):
        if basis[r] in art_set:
            pivot_col = next(
                (j for j in range(num_cols) if grid[r][j] != 0), None
            )
            if pivot_col is None:
                del grid[r]
                del basis[r]
                continue
            _pivot(grid, basis, r, pivot_col)
        r += 1


def feasible_point(constraints, num_vars):
    """Convenience wrapper: a satisfying assignment or None."""
    result = solve_lp(constraints, num_vars)
    return result.x if result.status == "optimal" else None
