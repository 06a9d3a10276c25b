"""Ground model: hypergraphs over 0/1 variables and brute-force oracles.

Variables are identified by 1-based integers.  A subset of the ground set
is stored as a strictly increasing tuple of ints; the same tuple doubles
as the identity of a relaxation variable (a "key"): length-1 keys are the
original x-variables, longer keys are product variables z_I.  Keying by
the subset itself means identical subsets unify automatically across
formulations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    EdgeTooSmallError,
    EmptyEdgeError,
    InfeasibleError,
    TooLargeError,
    VarOutOfRangeError,
)

# A canonical subset of the ground set: strictly increasing, non-empty.
VarSet = tuple[int, ...]
# A relaxation-variable identity; same representation as VarSet.
VarKey = tuple[int, ...]

Rational = Fraction | int

#: Default cap on the number of ground variables for 2^n enumerations.
ENUM_GUARD = 20


def varset(members: Iterable[int]) -> VarSet:
    """Canonicalize an iterable of variable indices into a sorted tuple."""
    return tuple(sorted(set(members)))


def key_order(key: VarKey) -> tuple[int, VarKey]:
    """Sort key: singletons first, then product variables by size and content."""
    return (len(key), key)


def key_label(key: VarKey) -> str:
    """Human-readable name: ``x3`` for singletons, ``z{1,2,3}`` otherwise."""
    if len(key) == 1:
        return f"x{key[0]}"
    return "z{" + ",".join(str(v) for v in key) + "}"


@dataclass(frozen=True)
class Hypergraph:
    """Ground set of size ``num_vars`` plus a family of product terms."""

    num_vars: int
    edges: tuple[VarSet, ...]

    def singletons(self) -> tuple[VarKey, ...]:
        return tuple((v,) for v in range(1, self.num_vars + 1))

    def all_keys(self) -> tuple[VarKey, ...]:
        """All relaxation-variable keys: x-variables then edges, canonical order."""
        return self.singletons() + self.edges

    def without_edge(self, edge: VarSet) -> "Hypergraph":
        """The hypergraph with one edge removed (same ground set)."""
        kept = tuple(e for e in self.edges if e != edge)
        if len(kept) == len(self.edges):
            raise VarOutOfRangeError(f"{edge} is not an edge of the hypergraph")
        return Hypergraph(self.num_vars, kept)


def validate_hypergraph(num_vars: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Check and canonicalize raw edge data.

    Edges are deduplicated and sorted; every edge must have at least two
    members inside ``1..num_vars``.  Validating the output again returns
    an equal value.
    """
    if num_vars < 1:
        raise VarOutOfRangeError(f"num_vars must be positive, got {num_vars}")
    canon: list[VarSet] = []
    for raw in edges:
        edge = varset(raw)
        if not edge:
            raise EmptyEdgeError("empty edge")
        if edge[0] < 1 or edge[-1] > num_vars:
            raise VarOutOfRangeError(f"edge {edge} leaves the range 1..{num_vars}")
        if len(edge) < 2:
            raise EdgeTooSmallError(f"edge {edge} has fewer than 2 members")
        canon.append(edge)
    unique = sorted(set(canon), key=key_order)
    return Hypergraph(num_vars, tuple(unique))


@dataclass(frozen=True)
class Constraint:
    """A linear row ``sum(coef * z_key) <= rhs`` over relaxation variables."""

    terms: tuple[tuple[Fraction, VarKey], ...]
    rhs: Fraction


@dataclass(frozen=True)
class MultilinearInstance:
    """A minimization instance: objective and constraints over monomials."""

    hypergraph: Hypergraph
    objective: tuple[tuple[Fraction, VarKey], ...]
    constraints: tuple[Constraint, ...]


def _check_terms(
    g: Hypergraph, terms: Iterable[tuple[Rational, Iterable[int]]]
) -> tuple[tuple[Fraction, VarKey], ...]:
    edge_set = set(g.edges)
    out = []
    for coef, raw in terms:
        key = varset(raw)
        if not key:
            raise EmptyEdgeError("empty monomial")
        if key[0] < 1 or key[-1] > g.num_vars:
            raise VarOutOfRangeError(f"monomial {key} leaves the range 1..{g.num_vars}")
        if len(key) >= 2 and key not in edge_set:
            raise VarOutOfRangeError(f"monomial {key} is not an edge of the hypergraph")
        out.append((Fraction(coef), key))
    return tuple(out)


def multilinear_instance(
    g: Hypergraph,
    objective: Iterable[tuple[Rational, Iterable[int]]],
    constraints: Iterable[tuple[Iterable[tuple[Rational, Iterable[int]]], Rational]] = (),
) -> MultilinearInstance:
    """Build an instance, checking every monomial against the hypergraph.

    Degree-1 terms are allowed even though edges always have two or more
    members.  Constraints are (terms, rhs) pairs read as ``<= rhs``.
    """
    obj = _check_terms(g, objective)
    rows = tuple(
        Constraint(_check_terms(g, terms), Fraction(rhs)) for terms, rhs in constraints
    )
    return MultilinearInstance(g, obj, rows)


# 0/1 vertices and enumeration oracles

MLVertex = dict[VarKey, int]


def _vertex_from_mask(g: Hypergraph, mask: int) -> MLVertex:
    # Bit i of the mask (from the top) is the value of x_{i+1}.
    n = g.num_vars
    point: MLVertex = {}
    for v in range(1, n + 1):
        point[(v,)] = (mask >> (n - v)) & 1
    for edge in g.edges:
        point[edge] = int(all(point[(v,)] for v in edge))
    return point


def iter_ml_vertices(g: Hypergraph, guard: int = ENUM_GUARD) -> Iterator[MLVertex]:
    """Yield all 2^n product vertices in lexicographic order of (x_1..x_n)."""
    if g.num_vars > guard:
        raise TooLargeError(f"{g.num_vars} variables exceed the enumeration guard {guard}")
    for mask in range(1 << g.num_vars):
        yield _vertex_from_mask(g, mask)


def ml_vertices(g: Hypergraph, guard: int = ENUM_GUARD) -> list[MLVertex]:
    """All 0/1 points with z_I equal to the product of its x-variables."""
    return list(iter_ml_vertices(g, guard))


def evaluate_terms(terms: Sequence[tuple[Fraction, VarKey]], point: Mapping[VarKey, Rational]) -> Fraction:
    return sum((coef * point[key] for coef, key in terms), Fraction(0))


def integer_optimum(
    inst: MultilinearInstance, guard: int = ENUM_GUARD
) -> tuple[Fraction, MLVertex]:
    """Exact minimum of the objective over all feasible 0/1 product vertices.

    Ties are broken by the lexicographically smallest x-vector.  Raises
    InfeasibleError when no vertex satisfies the constraints.
    """
    g = inst.hypergraph
    n = g.num_vars
    if n > guard:
        raise TooLargeError(f"{n} variables exceed the enumeration guard {guard}")
    masks = {key: sum(1 << (n - v) for v in key) for key in _instance_keys(inst)}

    best_value: Fraction | None = None
    best_mask = -1
    for mask in range(1 << n):
        feasible = True
        for row in inst.constraints:
            lhs = sum(
                (coef for coef, key in row.terms if mask & masks[key] == masks[key]),
                Fraction(0),
            )
            if lhs > row.rhs:
                feasible = False
                break
        if not feasible:
            continue
        value = sum(
            (coef for coef, key in inst.objective if mask & masks[key] == masks[key]),
            Fraction(0),
        )
        if best_value is None or value < best_value:
            best_value = value
            best_mask = mask
    if best_value is None:
        raise InfeasibleError("no 0/1 vertex satisfies the constraints")
    return best_value, _vertex_from_mask(g, best_mask)


def _instance_keys(inst: MultilinearInstance) -> set[VarKey]:
    keys = {key for _, key in inst.objective}
    for row in inst.constraints:
        keys.update(key for _, key in row.terms)
    return keys
