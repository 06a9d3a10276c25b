"""Standard and extended flower relaxations of a multilinear set.

An extended flower inequality couples a center edge with neighbor keys
(edges or single variables) that jointly cover the center and each meet
it: ``z_center + sum(1 - z_neighbor) >= 1``.  The flower relaxation is
the 0/1 box, the standard rows and every non-redundant such inequality.

Centers are edges throughout the enumeration; a center consisting of a
single variable is admitted as a degenerate representation whose
strongest instances are exactly the short standard rows ``z_I <= x_v``,
which is what allows the separation routine to be exact for the whole
relaxation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    CenterTooLargeError,
    InputError,
    InvalidPointError,
    MalformedFlowerError,
    MissingCoordinateError,
)
from .model import Hypergraph, Rational, VarKey, VarSet, key_label, varset
from .polyhedra import IneqSystem, LinIneq, lin_ineq

FLOWER = "flower"
EXTENDED = "extended"

#: Cap on the center size of the separation DP (2^|center| states).
DP_GUARD = 20


@dataclass(frozen=True)
class ExtendedFlower:
    """A center key plus the canonical tuple of its neighbor keys."""

    center: VarKey
    neighbors: tuple[VarKey, ...]


def flower(center: Iterable[int], neighbors: Iterable[Iterable[int]]) -> ExtendedFlower:
    """Canonicalize raw member lists into a flower."""
    return ExtendedFlower(varset(center), tuple(sorted({varset(n) for n in neighbors})))


def check_flower_shape(f: ExtendedFlower) -> None:
    """Structural conditions: cover, nonempty intersections, no self-neighbor."""
    if not f.neighbors:
        raise MalformedFlowerError("a flower needs at least one neighbor")
    center = set(f.center)
    if not center:
        raise MalformedFlowerError("empty center")
    covered: set[int] = set()
    for nb in f.neighbors:
        if nb == f.center:
            raise MalformedFlowerError("the center cannot be its own neighbor")
        if not center & set(nb):
            raise MalformedFlowerError(
                f"neighbor {key_label(nb)} does not meet the center {key_label(f.center)}"
            )
        covered |= set(nb)
    if not covered >= center:
        missing = varset(center - covered)
        raise MalformedFlowerError(
            f"neighbors do not cover the center; missing {missing}"
        )


def validate_flower(g: Hypergraph, f: ExtendedFlower) -> None:
    """Shape conditions plus membership of every key in the hypergraph."""
    check_flower_shape(f)
    keys = set(g.all_keys())
    if f.center not in keys:
        raise MalformedFlowerError(f"center {key_label(f.center)} is not a hypergraph key")
    for nb in f.neighbors:
        if nb not in keys:
            raise MalformedFlowerError(f"neighbor {key_label(nb)} is not a hypergraph key")


def flower_ineq(f: ExtendedFlower) -> LinIneq:
    """The row ``z_center - sum(z_neighbor) >= 1 - k`` in canonical form."""
    check_flower_shape(f)
    coeffs: dict[VarKey, int] = {f.center: 1}
    for nb in f.neighbors:
        coeffs[nb] = -1
    return lin_ineq(coeffs, 1 - len(f.neighbors))


def flower_kind(f: ExtendedFlower) -> str:
    """"flower" when the neighbor intersections partition the center."""
    center = set(f.center)
    seen: set[int] = set()
    for nb in f.neighbors:
        part = center & set(nb)
        if part & seen:
            return EXTENDED
        seen |= part
    return FLOWER


def exclusive_elements(f: ExtendedFlower) -> list[VarSet]:
    """Per neighbor, the center elements covered by no other neighbor."""
    center = set(f.center)
    out = []
    for i, nb in enumerate(f.neighbors):
        others: set[int] = set()
        for j, other in enumerate(f.neighbors):
            if j != i:
                others |= set(other)
        out.append(varset((center & set(nb)) - others))
    return out


def is_nonredundant(g: Hypergraph, f: ExtendedFlower) -> bool:
    """True iff every neighbor exclusively covers some center element."""
    return all(exclusive_elements(f))


def minimalize_flower(f: ExtendedFlower) -> ExtendedFlower:
    """Greedily drop neighbors whose center coverage the others provide."""
    neighbors = list(f.neighbors)
    center = set(f.center)
    changed = True
    while changed and len(neighbors) > 1:
        changed = False
        for i, nb in enumerate(neighbors):
            rest_cover: set[int] = set()
            for j, other in enumerate(neighbors):
                if j != i:
                    rest_cover |= set(other)
            if center <= rest_cover:
                del neighbors[i]
                changed = True
                break
    return ExtendedFlower(f.center, tuple(neighbors))


def standard_relaxation(g: Hypergraph) -> IneqSystem:
    """Short rows ``z_I <= x_v``, one long row per edge, plus the box."""
    rows: list[LinIneq] = []
    for edge in g.edges:
        for v in edge:
            rows.append(lin_ineq({(v,): 1, edge: -1}, 0))
        coeffs: dict[VarKey, int] = {edge: 1}
        for v in edge:
            coeffs[(v,)] = -1
        rows.append(lin_ineq(coeffs, 1 - len(edge)))
    return IneqSystem(g.all_keys(), tuple(rows), box=True)


def enumerate_flowers(
    g: Hypergraph, max_neighbors: int | None = None
) -> list[tuple[ExtendedFlower, str]]:
    """All non-redundant flowers per center edge, neighbor count capped.

    Non-redundancy forces at most ``|center|`` neighbors, so the per-center
    cap is ``min(max_neighbors, |center|)``.  Output order is center-major,
    then neighbor count, then neighbor-set lexicographic.
    """
    if max_neighbors is not None and max_neighbors < 1:
        raise InputError("max_neighbors must be at least 1")
    keys = g.all_keys()
    out: list[tuple[ExtendedFlower, str]] = []
    for center in g.edges:
        cset = set(center)
        cap = len(center) if max_neighbors is None else min(max_neighbors, len(center))
        cands = sorted(k for k in keys if k != center and cset & set(k))
        masks = [frozenset(cset & set(k)) for k in cands]
        per_center: list[ExtendedFlower] = []
        for k in range(1, cap + 1):
            for combo in itertools.combinations(range(len(cands)), k):
                union: set[int] = set()
                for i in combo:
                    union |= masks[i]
                if union != cset:
                    continue
                nonred = True
                for i in combo:
                    rest: set[int] = set()
                    for j in combo:
                        if j != i:
                            rest |= set(cands[j])
                    if masks[i] <= rest:
                        nonred = False
                        break
                if not nonred:
                    continue
                per_center.append(ExtendedFlower(center, tuple(cands[i] for i in combo)))
        per_center.sort(key=lambda f: f.neighbors)
        out.extend((f, flower_kind(f)) for f in per_center)
    return out


def flower_relaxation(g: Hypergraph, max_neighbors: int | None = None) -> IneqSystem:
    """Box, all standard rows, and every enumerated flower inequality."""
    base = standard_relaxation(g)
    rows = list(base.ineqs)
    seen = set(rows)
    for f, _ in enumerate_flowers(g, max_neighbors):
        q = flower_ineq(f)
        if q not in seen:
            seen.add(q)
            rows.append(q)
    return IneqSystem(base.vars, tuple(rows), box=True)


@dataclass(frozen=True)
class Violation:
    """A separated flower together with its exact violation amount."""

    flower: ExtendedFlower
    amount: Fraction


def separate_flower(
    g: Hypergraph,
    point: Mapping[VarKey, Rational],
    max_neighbors: int | None = None,
    guard: int = DP_GUARD,
) -> Violation | None:
    """Most violated flower inequality at the point, or None.

    Per center the minimum of ``sum(1 - z_neighbor)`` over covering
    neighbor sets is computed by a subset-mask dynamic program; degenerate
    single-variable centers account for the short standard rows.  Ties are
    broken by the smallest center, then the smallest neighbor tuple.  The
    returned flower is reduced to non-redundant form.
    """
    if max_neighbors is not None and max_neighbors < 1:
        raise InputError("max_neighbors must be at least 1")
    values: dict[VarKey, Fraction] = {}
    for key in g.all_keys():
        if key not in point:
            raise MissingCoordinateError(f"point misses coordinate {key_label(key)}")
        val = Fraction(point[key])
        if val < 0 or val > 1:
            raise InvalidPointError(f"coordinate {key_label(key)} = {val} leaves [0,1]")
        values[key] = val

    found: list[tuple[Fraction, ExtendedFlower]] = []
    for v in range(1, g.num_vars + 1):
        base = values[(v,)]
        best_edge: VarKey | None = None
        for edge in g.edges:
            if v in edge and (best_edge is None or values[edge] > values[best_edge]):
                best_edge = edge
        if best_edge is not None and values[best_edge] - base > 0:
            f = ExtendedFlower((v,), (best_edge,))
            found.append((values[best_edge] - base, f))
    for center in g.edges:
        if len(center) > guard:
            raise CenterTooLargeError(
                f"center {key_label(center)} exceeds the DP guard of {guard} elements"
            )
        slack = 1 - values[center]
        if slack <= 0:
            continue
        cover = _min_cover(g, center, values, max_neighbors)
        if cover is None:
            continue
        cost, picked = cover
        if slack - cost > 0:
            f = minimalize_flower(ExtendedFlower(center, picked))
            found.append((slack - cost, f))
    if not found:
        return None
    found.sort(key=lambda t: (-t[0], t[1].center, t[1].neighbors))
    amount, best = found[0]
    return Violation(best, amount)


def _min_cover(
    g: Hypergraph,
    center: VarSet,
    values: Mapping[VarKey, Fraction],
    max_neighbors: int | None,
) -> tuple[Fraction, tuple[VarKey, ...]] | None:
    """Cheapest covering neighbor set under weights ``1 - z``; None if none."""
    elems = {v: i for i, v in enumerate(center)}
    full = (1 << len(center)) - 1
    cands: list[tuple[VarKey, int, Fraction]] = []
    for key in g.all_keys():
        if key == center:
            continue
        mask = 0
        for v in key:
            if v in elems:
                mask |= 1 << elems[v]
        if mask:
            cands.append((key, mask, 1 - values[key]))
    if not cands:
        return None
    cap = len(center) if max_neighbors is None else min(max_neighbors, len(center))
    if cap >= len(center):
        return _cover_dp(cands, full)
    capped = _cover_dp_capped(cands, full, cap)
    # The all-singleton cover backs a standard row, which is part of the
    # relaxation at every cap, so it competes regardless of the cap.
    singleton_cost = sum((1 - values[(v,)] for v in center), Fraction(0))
    singleton_pick = tuple((v,) for v in center)
    if capped is None or singleton_cost < capped[0]:
        return singleton_cost, singleton_pick
    return capped


def _cover_dp(cands, full):
    # States are (cost, set count): cost ties resolve toward fewer neighbors.
    dp: list[tuple[Fraction, int] | None] = [None] * (full + 1)
    choice = [-1] * (full + 1)
    dp[0] = (Fraction(0), 0)
    for mask in range(1, full + 1):
        best: tuple[Fraction, int] | None = None
        pick = -1
        for i, (_, cmask, w) in enumerate(cands):
            if not cmask & mask:
                continue
            prev = dp[mask & ~cmask]
            if prev is None:
                continue
            cand = (prev[0] + w, prev[1] + 1)
            if best is None or cand < best:
                best = cand
                pick = i
        dp[mask] = best
        choice[mask] = pick
    if dp[full] is None:
        return None
    picked: list[VarKey] = []
    mask = full
    while mask:
        i = choice[mask]
        picked.append(cands[i][0])
        mask &= ~cands[i][1]
    return dp[full][0], tuple(sorted(picked))


def _cover_dp_capped(cands, full, cap):
    size = full + 1
    prev: list[Fraction | None] = [None] * size
    prev[0] = Fraction(0)
    costs: list[list[Fraction | None]] = []
    picks: list[list[int]] = []
    for _ in range(cap):
        cur = list(prev)
        pick = [-1] * size
        for mask in range(1, size):
            for i, (_, cmask, w) in enumerate(cands):
                if not cmask & mask:
                    continue
                base = prev[mask & ~cmask]
                if base is None:
                    continue
                cost = base + w
                if cur[mask] is None or cost < cur[mask]:
                    cur[mask] = cost
                    pick[mask] = i
        costs.append(cur)
        picks.append(pick)
        prev = cur
    if prev[full] is None:
        return None
    best = prev[full]
    level = next(i for i in range(cap) if costs[i][full] == best)  # fewest sets
    picked: list[VarKey] = []
    mask = full
    while mask:
        i = picks[level][mask]
        while i < 0:  # the value was inherited from a shallower layer
            level -= 1
            i = picks[level][mask]
        picked.append(cands[i][0])
        mask &= ~cands[i][1]
        level -= 1
    return best, tuple(sorted(picked))
