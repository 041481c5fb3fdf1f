"""Exact rational linear feasibility via phase-1 simplex with Bland's rule.

Only one entry point is needed: find free x with A x <= b, all data
Fractions.  The strict systems elsewhere in the package are pre-scaled so
that a margin of 1 replaces strictness.
"""

from __future__ import annotations

from fractions import Fraction


def linear_feasibility(rows, rhs):
    """Solve {x : rows @ x <= rhs} over the rationals.

    Returns a tuple of Fractions or None when infeasible.  Free variables
    are split into positive and negative parts; a slack turns each row into
    an equation, and artificial variables give the phase-1 start.
    """
    m = len(rows)
    if m == 0:
        return ()
    n = len(rows[0])
    rows = [[Fraction(c) for c in row] for row in rows]
    rhs = [Fraction(c) for c in rhs]
    # equations: rows.(p - q) + s = rhs, then scale rows to rhs >= 0
    eqs = []
    for row, b in zip(rows, rhs):
        sign = -1 if b < 0 else 1
        eqs.append(([sign * c for c in row] + [-sign * c for c in row],
                    sign, sign * b))
    ncols = 2 * n + m + m                     # p, q, slack, artificial
    tableau = []
    for i, (coef, sign, b) in enumerate(eqs):
        row = coef + [Fraction(0)] * (m + m)
        row[2 * n + i] = Fraction(sign)       # slack column
        row[2 * n + m + i] = Fraction(1)      # artificial column
        tableau.append(row + [b])
    basis = [2 * n + m + i for i in range(m)]
    # reduced costs for minimizing the artificial sum
    cost = [Fraction(0)] * ncols + [Fraction(0)]
    for j in range(ncols + 1):
        cost[j] = -sum(tableau[i][j] for i in range(m))
    for j in range(2 * n + m, ncols):
        cost[j] += 1

    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return None                        # unbounded phase 1: cannot happen
        piv = tableau[leave][enter]
        tableau[leave] = [c / piv for c in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, tableau[leave])]
        basis[leave] = enter

    if -cost[-1] != 0:                         # residual artificial mass
        return None
    solution = [Fraction(0)] * ncols
    for i, var in enumerate(basis):
        solution[var] = tableau[i][-1]
    return tuple(solution[j] - solution[n + j] for j in range(n))
