"""Exact two-phase primal simplex on rational tableaus.

Bland's pivoting rule keeps every solve finite; there are no tolerances
anywhere.  Callers hand over an equality-form program together with a
ready-made basic column per row where one exists; rows without one get an
artificial variable and trigger a phase-1 solve.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)

#: Running totals, read by check reports.  Plain dict on purpose.
STATS = {"lp_calls": 0, "pivots": 0}


def solve_standard(
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    cost: list[Fraction],
    basis_hint: list[int | None],
) -> tuple[str, Fraction | None, list[Fraction] | None]:
    """Minimize ``cost @ x`` subject to ``rows @ x == rhs`` and ``x >= 0``.

    Every entry of ``rhs`` must be nonnegative.  ``basis_hint[i]`` may name
    a column that is +1 in row i and 0 elsewhere; pass None to request an
    artificial variable for that row.  Returns ``(status, value, x)`` where
    ``x`` has one exact rational per original column.
    """
    STATS["lp_calls"] += 1
    ncols = len(cost)
    tableau = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    if any(v < 0 for v in b):
        raise ValueError("solve_standard requires nonnegative right-hand sides")

    base: list[int] = []
    art_cols: list[int] = []
    width = ncols
    for i, hint in enumerate(basis_hint):
        if hint is None:
            for k, row in enumerate(tableau):
                row.append(_ONE if k == i else _ZERO)
            art_cols.append(width)
            base.append(width)
            width += 1
        else:
            base.append(hint)

    if art_cols:
        phase1 = [_ZERO] * ncols + [_ONE] * len(art_cols)
        status, value = _optimize(tableau, b, phase1, base, width)
        if status != OPTIMAL:  # bounded below by zero, cannot be unbounded
            raise AssertionError("phase 1 terminated without an optimum")
        if value > 0:
            return INFEASIBLE, None, None
        _purge_artificials(tableau, b, base, ncols)
        for row in tableau:
            del row[ncols:]

    status, value = _optimize(tableau, b, list(cost), base, ncols)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [_ZERO] * ncols
    for i, col in enumerate(base):
        x[col] = b[i]
    return OPTIMAL, value, x


def _optimize(tableau, b, cost, base, width) -> tuple[str, Fraction | None]:
    m = len(tableau)
    zrow = list(cost[:width])
    for i, col in enumerate(base):
        ci = cost[col]
        if ci:
            row = tableau[i]
            zrow = [z - ci * a for z, a in zip(zrow, row)]
    while True:
        entering = -1
        for j in range(width):
            if zrow[j] < 0:
                entering = j
                break
        if entering < 0:
            value = sum((cost[base[i]] * b[i] for i in range(m)), _ZERO)
            return OPTIMAL, value
        leaving = -1
        best: Fraction | None = None
        for i in range(m):
            t = tableau[i][entering]
            if t > 0:
                ratio = b[i] / t
                if best is None or ratio < best or (ratio == best and base[i] < base[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return UNBOUNDED, None
        _pivot(tableau, b, zrow, base, leaving, entering)


def _pivot(tableau, b, zrow, base, r, c) -> None:
    STATS["pivots"] += 1
    piv = tableau[r][c]
    if piv != 1:
        tableau[r] = [v / piv for v in tableau[r]]
        b[r] /= piv
    prow = tableau[r]
    pb = b[r]
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[c]
        if f:
            tableau[i] = [a - f * p for a, p in zip(row, prow)]
            b[i] -= f * pb
    f = zrow[c]
    if f:
        zrow[:] = [a - f * p for a, p in zip(zrow, prow)]
    base[r] = c


def _purge_artificials(tableau, b, base, ncols) -> None:
    """Pivot zero-level artificials out of the basis; drop dependent rows."""
    drop: list[int] = []
    for i in range(len(tableau)):
        if base[i] < ncols:
            continue
        col = next((j for j in range(ncols) if tableau[i][j] != 0), -1)
        if col < 0:
            drop.append(i)  # row is a linear combination of the others
        else:
            zrow = [_ZERO] * ncols
            _pivot(tableau, b, zrow, base, i, col)
    for i in reversed(drop):
        del tableau[i]
        del b[i]
        del base[i]
