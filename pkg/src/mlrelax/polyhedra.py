"""Exact-rational inequality systems and the polyhedral toolbox.

Systems are H-representations over relaxation-variable keys.  Every row is
stored in the canonical form ``sum(c * z) >= rhs`` with coprime integer
coefficients, which makes duplicate detection a set operation.  The 0/1
box is an implicit part of a system (flag per system, on by default) and
is materialized only where Fourier-Motzkin or the simplex needs it.

Validity, membership, redundancy removal and projection are all exact;
the only LP algorithm in the package is the rational simplex from
:mod:`mlrelax.simplex`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from . import simplex
from .errors import (
    MissingCoordinateError,
    UnknownVariableError,
    UnsupportedVariableError,
    VariableMismatchError,
)
from .model import Rational, VarKey, key_label, key_order

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LinIneq:
    """One row ``sum(coef * z_key) >= rhs`` with coprime integer data."""

    terms: tuple[tuple[VarKey, int], ...]
    rhs: int

    @property
    def coeffs(self) -> dict[VarKey, int]:
        return dict(self.terms)

    def coeff(self, key: VarKey) -> int:
        for k, c in self.terms:
            if k == key:
                return c
        return 0

    def support(self) -> tuple[VarKey, ...]:
        return tuple(k for k, _ in self.terms)

    def evaluate(self, point: Mapping[VarKey, Rational]) -> Fraction:
        return sum((c * point[k] for k, c in self.terms), _ZERO)

    def __str__(self) -> str:
        if not self.terms:
            return f"0 >= {self.rhs}"
        parts = []
        for k, c in self.terms:
            label = key_label(k)
            if c == 1:
                parts.append(f"+ {label}")
            elif c == -1:
                parts.append(f"- {label}")
            elif c < 0:
                parts.append(f"- {-c}*{label}")
            else:
                parts.append(f"+ {c}*{label}")
        lhs = " ".join(parts).lstrip("+ ")
        return f"{lhs} >= {self.rhs}"


def lin_ineq(coeffs: Mapping[VarKey, Rational], rhs: Rational) -> LinIneq:
    """Canonicalize a ``>=`` row: drop zeros, scale to coprime integers."""
    entries = [(k, Fraction(c)) for k, c in coeffs.items() if c]
    r = Fraction(rhs)
    if not entries:
        return LinIneq((), (r > 0) - (r < 0))
    scale = lcm(*(c.denominator for _, c in entries), r.denominator)
    ints = [(k, int(c * scale)) for k, c in entries]
    g = gcd(*(abs(c) for _, c in ints), abs(int(r * scale)))
    if g > 1:
        ints = [(k, c // g) for k, c in ints]
    terms = tuple(sorted(ints, key=lambda kc: key_order(kc[0])))
    return LinIneq(terms, int(r * scale) // (g if g > 1 else 1))


def lin_ineq_le(coeffs: Mapping[VarKey, Rational], rhs: Rational) -> LinIneq:
    """A ``<=`` row, stored canonically as its negation."""
    return lin_ineq({k: -Fraction(c) for k, c in coeffs.items()}, -Fraction(rhs))


@dataclass(frozen=True)
class IneqSystem:
    """An H-representation: ordered variables, rows, implicit 0/1 box flag."""

    vars: tuple[VarKey, ...]
    ineqs: tuple[LinIneq, ...]
    box: bool = True


def ineq_system(
    variables: Iterable[VarKey], ineqs: Iterable[LinIneq], box: bool = True
) -> IneqSystem:
    ordered = tuple(sorted(set(variables), key=key_order))
    known = set(ordered)
    rows = tuple(ineqs)
    for q in rows:
        for k, _ in q.terms:
            if k not in known:
                raise UnknownVariableError(f"row {q} uses unknown variable {key_label(k)}")
    return IneqSystem(ordered, rows, box)


def box_rows(keys: Iterable[VarKey]) -> list[LinIneq]:
    """Materialized 0/1 bounds: ``z >= 0`` and ``-z >= -1`` per key."""
    rows = []
    for k in keys:
        rows.append(LinIneq(((k, 1),), 0))
        rows.append(LinIneq(((k, -1),), -1))
    return rows


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: dict[VarKey, Fraction] | None = None


def lp_solve(
    sys: IneqSystem, objective: Mapping[VarKey, Rational], direction: str = "min"
) -> LpOutcome:
    """Exact optimum of a linear objective over the system.

    With the box on, the feasible set is compact and the outcome is never
    unbounded.  The returned point satisfies every row exactly.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', not {direction!r}")
    known = set(sys.vars)
    for k in objective:
        if k not in known:
            raise UnsupportedVariableError(f"objective uses unknown variable {key_label(k)}")
    sign = 1 if direction == "min" else -1
    obj = [sign * Fraction(objective.get(k, 0)) for k in sys.vars]
    if sys.box:
        status, value, point = _primal_boxed(sys, obj)
    else:
        status, value, point = _primal_free(sys, obj)
    if status != simplex.OPTIMAL:
        return LpOutcome(status)
    return LpOutcome(simplex.OPTIMAL, sign * value, point)


def _dense(row: LinIneq, index: dict[VarKey, int], width: int) -> list[Fraction]:
    out = [_ZERO] * width
    for k, c in row.terms:
        out[index[k]] = Fraction(c)
    return out


def _primal_boxed(sys: IneqSystem, obj: list[Fraction]):
    """Standard form with z >= 0, one slack row per upper bound."""
    d = len(sys.vars)
    index = {k: i for i, k in enumerate(sys.vars)}
    m = len(sys.ineqs)
    width = d + m + d  # structurals, surpluses, upper-bound slacks
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    hints: list[int | None] = []
    for i, q in enumerate(sys.ineqs):
        row = _dense(q, index, width)
        beta = Fraction(q.rhs)
        row[d + i] = Fraction(-1)
        if beta > 0:
            rows.append(row)
            rhs.append(beta)
            hints.append(None)
        else:
            rows.append([-v for v in row])
            rhs.append(-beta)
            hints.append(d + i)
    for j in range(d):
        row = [_ZERO] * width
        row[j] = Fraction(1)
        row[d + m + j] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
        hints.append(d + m + j)
    cost = obj + [_ZERO] * (m + d)
    status, value, x = simplex.solve_standard(rows, rhs, cost, hints)
    if status != simplex.OPTIMAL:
        return status, None, None
    point = {k: x[i] for k, i in index.items()}
    return status, value, point


def _primal_free(sys: IneqSystem, obj: list[Fraction]):
    """Standard form with every variable split into a nonnegative pair."""
    d = len(sys.vars)
    index = {k: i for i, k in enumerate(sys.vars)}
    m = len(sys.ineqs)
    width = 2 * d + m
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    hints: list[int | None] = []
    for i, q in enumerate(sys.ineqs):
        row = [_ZERO] * width
        for k, c in q.terms:
            j = index[k]
            row[j] = Fraction(c)
            row[d + j] = Fraction(-c)
        row[2 * d + i] = Fraction(-1)
        beta = Fraction(q.rhs)
        if beta > 0:
            rows.append(row)
            rhs.append(beta)
            hints.append(None)
        else:
            rows.append([-v for v in row])
            rhs.append(-beta)
            hints.append(2 * d + i)
    cost = obj + [-v for v in obj] + [_ZERO] * m
    status, value, x = simplex.solve_standard(rows, rhs, cost, hints)
    if status != simplex.OPTIMAL:
        return status, None, None
    point = {k: x[i] - x[d + i] for k, i in index.items()}
    return status, value, point


def minimum_value(sys: IneqSystem, coeffs: Mapping[VarKey, Rational]) -> tuple[str, Fraction | None]:
    """Exact ``min coeffs @ z`` over the system, without a witness point.

    Returns ``("optimal", value)``, ``("infeasible", None)`` for an empty
    system, or ``("unbounded", None)``.  With the box on this solves the
    dual program, whose tableau has only one row per variable.
    """
    obj = [Fraction(coeffs.get(k, 0)) for k in sys.vars]
    if not sys.box:
        status, value, _ = _primal_free(sys, obj)
        return status, value
    d = len(sys.vars)
    m = len(sys.ineqs)
    width = m + 2 * d  # row multipliers, lower-bound and upper-bound multipliers
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    hints: list[int | None] = []
    index = {k: i for i, k in enumerate(sys.vars)}
    dense_rows = [_dense(q, index, d) for q in sys.ineqs]
    for j in range(d):
        row = [_ZERO] * width
        for i in range(m):
            row[i] = dense_rows[i][j]
        row[m + j] = Fraction(1)
        row[m + d + j] = Fraction(-1)
        a = obj[j]
        if a >= 0:
            rows.append(row)
            rhs.append(a)
            hints.append(m + j)
        else:
            rows.append([-v for v in row])
            rhs.append(-a)
            hints.append(m + d + j)
    cost = [-Fraction(q.rhs) for q in sys.ineqs] + [_ZERO] * d + [Fraction(1)] * d
    status, value, _ = simplex.solve_standard(rows, rhs, cost, hints)
    if status == simplex.UNBOUNDED:
        return simplex.INFEASIBLE, None  # unbounded dual certifies an empty primal
    if status != simplex.OPTIMAL:
        raise AssertionError("the dual program is always feasible")
    return simplex.OPTIMAL, -value


def _box_implies(q: LinIneq) -> bool:
    """True when the row already holds everywhere on the 0/1 box."""
    low = sum(c for _, c in q.terms if c < 0)
    return low >= q.rhs


def _implied_by_row_plus_box(q: LinIneq, r: LinIneq) -> bool:
    """Sufficient test: ``q - r`` holds everywhere on the 0/1 box."""
    qc = dict(q.terms)
    low = 0
    for k, c in r.terms:
        dc = qc.pop(k, 0) - c
        if dc < 0:
            low += dc
    for c in qc.values():
        if c < 0:
            low += c
    return low >= q.rhs - r.rhs


def is_valid(sys: IneqSystem, q: LinIneq) -> bool:
    """Exact validity: ``min (lhs - rhs) >= 0`` over the system.

    Vacuously true over an empty system.  Cheap certificates (literal row,
    box implication, one row plus box) are tried before the LP.
    """
    known = set(sys.vars)
    for k, _ in q.terms:
        if k not in known:
            raise UnsupportedVariableError(f"row {q} uses unknown variable {key_label(k)}")
    if not q.terms:
        return q.rhs <= 0 or not _feasible(sys)
    if sys.box:
        if _box_implies(q):
            return True
        if q in set(sys.ineqs):
            return True
        for r in sys.ineqs:
            if _implied_by_row_plus_box(q, r):
                return True
    status, value = minimum_value(sys, dict(q.terms))
    if status == simplex.INFEASIBLE:
        return True
    if status == simplex.UNBOUNDED:
        return False
    return value >= q.rhs


def _feasible(sys: IneqSystem) -> bool:
    status, _ = minimum_value(sys, {})
    return status == simplex.OPTIMAL


def is_member(
    sys: IneqSystem, point: Mapping[VarKey, Rational]
) -> tuple[bool, list[LinIneq]]:
    """Exact membership; the second element lists every violated row."""
    for k in sys.vars:
        if k not in point:
            raise MissingCoordinateError(f"point misses coordinate {key_label(k)}")
    violated: list[LinIneq] = []
    if sys.box:
        for k in sys.vars:
            v = Fraction(point[k])
            if v < 0:
                violated.append(LinIneq(((k, 1),), 0))
            if v > 1:
                violated.append(LinIneq(((k, -1),), -1))
    for q in sys.ineqs:
        if q.evaluate(point) < q.rhs:
            violated.append(q)
    return (not violated, violated)


def _combine(p: LinIneq, alpha: int, q: LinIneq, beta: int) -> LinIneq:
    coeffs: dict[VarKey, int] = {}
    for k, c in p.terms:
        coeffs[k] = alpha * c
    for k, c in q.terms:
        coeffs[k] = coeffs.get(k, 0) + beta * c
    return lin_ineq(coeffs, alpha * p.rhs + beta * q.rhs)


def fm_eliminate(sys: IneqSystem, victim: VarKey, prune: bool = True) -> IneqSystem:
    """Fourier-Motzkin elimination of one variable; exact projection.

    Rows in which the victim appears with opposite signs are combined
    pairwise; the victim's box rows take part when the box is on.  With
    ``prune`` the output is passed through :func:`remove_redundant`.
    """
    if victim not in sys.vars:
        raise UnknownVariableError(f"{key_label(victim)} is not a system variable")
    pos: list[LinIneq] = []
    neg: list[LinIneq] = []
    keep: list[LinIneq] = []
    for q in sys.ineqs:
        c = q.coeff(victim)
        if c > 0:
            pos.append(q)
        elif c < 0:
            neg.append(q)
        else:
            keep.append(q)
    if sys.box:
        pos.append(LinIneq(((victim, 1),), 0))
        neg.append(LinIneq(((victim, -1),), -1))
    rows: list[LinIneq] = []
    seen: set[LinIneq] = set()
    for q in keep:
        if q not in seen:
            seen.add(q)
            rows.append(q)
    for p in pos:
        cp = p.coeff(victim)
        for q in neg:
            cq = q.coeff(victim)
            combined = _combine(p, -cq, q, cp)
            if not combined.terms and combined.rhs <= 0:
                continue  # vacuous
            if combined not in seen:
                seen.add(combined)
                rows.append(combined)
    out = IneqSystem(tuple(k for k in sys.vars if k != victim), tuple(rows), sys.box)
    if prune:
        out = remove_redundant(out)
    return out


def _cheap_prune(rows: list[LinIneq], box: bool) -> list[LinIneq]:
    """Deduplicate and drop rows certified redundant without an LP."""
    out: list[LinIneq] = []
    seen: set[LinIneq] = set()
    for q in rows:
        if q in seen:
            continue
        seen.add(q)
        if not q.terms:
            if q.rhs > 0:
                out.append(q)  # infeasibility witness, keep
            continue
        if box and _box_implies(q):
            continue
        out.append(q)
    if not box:
        return out
    i = 0
    while i < len(out):
        q = out[i]
        if q.terms and any(
            j != i and r.terms and _implied_by_row_plus_box(q, r) for j, r in enumerate(out)
        ):
            del out[i]
        else:
            i += 1
    return out


def remove_redundant(sys: IneqSystem) -> IneqSystem:
    """Drop every row implied by the others; the solution set is unchanged.

    Cheap certificates run first, then each survivor faces one exact LP
    against the rest of the system.
    """
    rows = _cheap_prune(list(sys.ineqs), sys.box)
    i = 0
    while i < len(rows):
        q = rows[i]
        if not q.terms:
            i += 1
            continue
        rest = IneqSystem(sys.vars, tuple(rows[:i] + rows[i + 1 :]), sys.box)
        if is_valid(rest, q):
            del rows[i]
        else:
            i += 1
    return IneqSystem(sys.vars, tuple(rows), sys.box)


def fast_prune(sys: IneqSystem) -> IneqSystem:
    """The LP-free part of :func:`remove_redundant`, for interior FM steps."""
    return IneqSystem(sys.vars, tuple(_cheap_prune(list(sys.ineqs), sys.box)), sys.box)


def _containment_rows(sub: IneqSystem, sup: IneqSystem) -> list[LinIneq]:
    """Rows whose validity over ``sub`` certifies ``sub <= sup``."""
    rows = list(sup.ineqs)
    if sup.box and not sub.box:
        rows.extend(box_rows(sup.vars))
    return rows


def poly_equal(a: IneqSystem, b: IneqSystem) -> bool:
    """Mutual exact implication of two systems over the same variables."""
    if set(a.vars) != set(b.vars):
        raise VariableMismatchError("systems are over different variable sets")
    if a.box == b.box and set(a.ineqs) == set(b.ineqs):
        return True
    shared = set(a.ineqs) & set(b.ineqs) if a.box == b.box else set()
    for q in _containment_rows(a, b):
        if q not in shared and not is_valid(a, q):
            return False
    for q in _containment_rows(b, a):
        if q not in shared and not is_valid(b, q):
            return False
    return True
