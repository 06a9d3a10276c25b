"""Recursive linearization digraphs and their LP relaxations.

A linearization is a simple digraph on subsets of the ground set: every
arc goes to a strict subset, every non-singleton node equals the union of
its successors, and all singletons are nodes.  Each node carries one
relaxation variable; the attached system has one short row per arc and
one long row per non-singleton node.

The flower-to-McCormick constructor turns a non-redundant extended flower
inequality into a binary partitioning linearization whose projected
relaxation implies that inequality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArcNotStrictSubsetError,
    DuplicateArcError,
    NotOfHypergraphError,
    PathExistsError,
    RedundantFlowerError,
    SuccessorUnionMismatchError,
    UnknownNodeError,
    VarOutOfRangeError,
)
from .model import Hypergraph, VarKey, VarSet, key_order, varset
from .polyhedra import (
    IneqSystem,
    LinIneq,
    fast_prune,
    fm_eliminate,
    lin_ineq,
    remove_redundant,
)
from .relaxations import ExtendedFlower, exclusive_elements, is_nonredundant, validate_flower

Arc = tuple[VarSet, VarSet]


@dataclass(frozen=True)
class Linearization:
    """Simple digraph on ground-set subsets, singletons always included."""

    num_vars: int
    nodes: tuple[VarSet, ...]
    arcs: tuple[Arc, ...]

    def successor_map(self) -> dict[VarSet, tuple[VarSet, ...]]:
        succ: dict[VarSet, list[VarSet]] = {n: [] for n in self.nodes}
        for i, j in self.arcs:
            succ[i].append(j)
        return {n: tuple(sorted(s, key=key_order)) for n, s in succ.items()}

    def predecessor_map(self) -> dict[VarSet, tuple[VarSet, ...]]:
        pred: dict[VarSet, list[VarSet]] = {n: [] for n in self.nodes}
        for i, j in self.arcs:
            pred[j].append(i)
        return {n: tuple(sorted(p, key=key_order)) for n, p in pred.items()}


@dataclass(frozen=True)
class LinClass:
    """Classification flags; ``of_g`` is None when no hypergraph was given."""

    of_g: bool | None
    partitioning: bool
    binary: bool
    mccormick: bool


def validate_linearization(
    nodes: Iterable[Iterable[int]],
    arcs: Iterable[tuple[Iterable[int], Iterable[int]]],
    g: Hypergraph | None = None,
    num_vars: int | None = None,
    require_of_g: bool = False,
) -> tuple[Linearization, LinClass]:
    """Check all structural invariants and classify the digraph.

    Singleton nodes for the whole ground set are added automatically.  The
    ground-set size comes from ``g``, from ``num_vars``, or failing both
    from the largest member mentioned.
    """
    raw_nodes = [varset(n) for n in nodes]
    raw_arcs = [(varset(i), varset(j)) for i, j in arcs]
    mentioned = [v for n in raw_nodes for v in n] + [
        v for i, j in raw_arcs for v in (*i, *j)
    ]
    if g is not None:
        n_ground = g.num_vars
    elif num_vars is not None:
        n_ground = num_vars
    elif mentioned:
        n_ground = max(mentioned)
    else:
        raise VarOutOfRangeError("cannot infer the ground-set size from empty input")
    for n in raw_nodes:
        if not n:
            raise UnknownNodeError("empty node set")
        if n[0] < 1 or n[-1] > n_ground:
            raise VarOutOfRangeError(f"node {n} leaves the range 1..{n_ground}")
    node_set = set(raw_nodes) | {(v,) for v in range(1, n_ground + 1)}

    arc_set: set[Arc] = set()
    for i, j in raw_arcs:
        if i not in node_set or j not in node_set:
            raise UnknownNodeError(f"arc ({i}, {j}) uses an unknown node")
        if not (set(j) < set(i)):
            raise ArcNotStrictSubsetError(
                f"arc ({i}, {j}): the head must be a strict subset of the tail"
            )
        if (i, j) in arc_set:
            raise DuplicateArcError(f"duplicate arc ({i}, {j})")
        arc_set.add((i, j))

    succ: dict[VarSet, list[VarSet]] = {n: [] for n in node_set}
    for i, j in arc_set:
        succ[i].append(j)
    for n in node_set:
        if len(n) == 1:
            continue
        union: set[int] = set()
        for child in succ[n]:
            union |= set(child)
        if union != set(n):
            raise SuccessorUnionMismatchError(
                f"the successors of {n} unite to {varset(union)}, not to the node itself"
            )

    lin = Linearization(
        n_ground,
        tuple(sorted(node_set, key=key_order)),
        tuple(sorted(arc_set, key=lambda a: (key_order(a[0]), key_order(a[1])))),
    )
    cls = classify(lin, g)
    if require_of_g and not cls.of_g:
        raise NotOfHypergraphError("not a linearization of the given hypergraph")
    return lin, cls


def classify(d: Linearization, g: Hypergraph | None = None) -> LinClass:
    succ = d.successor_map()
    partitioning = True
    binary = True
    for n in d.nodes:
        if len(n) == 1:
            continue
        children = succ[n]
        if len(children) != 2:
            binary = False
        total = 0
        union: set[int] = set()
        for child in children:
            total += len(child)
            union |= set(child)
        if total != len(union):
            partitioning = False
    of_g: bool | None = None
    if g is not None:
        pred = d.predecessor_map()
        allowed = set(g.edges) | {(v,) for v in range(1, g.num_vars + 1)}
        of_g = set(g.edges) <= set(d.nodes) and all(
            n in allowed for n in d.nodes if not pred[n]
        )
    return LinClass(of_g, partitioning, binary, partitioning and binary)


def standard_linearization(g: Hypergraph) -> Linearization:
    """Each edge points at exactly its own singletons."""
    arcs = [(edge, (v,)) for edge in g.edges for v in edge]
    lin, _ = validate_linearization(g.edges, arcs, g)
    return lin


def relaxation_system(d: Linearization) -> IneqSystem:
    """Arc rows ``z_tail <= z_head``, one long row per non-singleton, box."""
    rows: list[LinIneq] = []
    for i, j in d.arcs:
        rows.append(lin_ineq({j: 1, i: -1}, 0))
    succ = d.successor_map()
    for n in d.nodes:
        if len(n) == 1:
            continue
        coeffs: dict[VarKey, int] = {n: 1}
        for child in succ[n]:
            coeffs[child] = -1
        rows.append(lin_ineq(coeffs, 1 - len(succ[n])))
    return IneqSystem(d.nodes, tuple(rows), box=True)


def has_path(d: Linearization, src: VarSet, dst: VarSet) -> bool:
    """Reachability along arcs; every node reaches itself."""
    src, dst = varset(src), varset(dst)
    node_set = set(d.nodes)
    if src not in node_set or dst not in node_set:
        raise UnknownNodeError("both endpoints must be nodes")
    if src == dst:
        return True
    succ = d.successor_map()
    stack = [src]
    seen = {src}
    while stack:
        cur = stack.pop()
        for child in succ[cur]:
            if child == dst:
                return True
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return False


def nonpath_witness(
    d: Linearization, i_star: VarSet, j_star: VarSet
) -> dict[VarKey, Fraction]:
    """A feasible point violating ``z_i <= z_j`` when no path exists.

    Nodes that reach ``j_star`` get 0, all others 1/2; the result lies in
    the relaxation and misses the target row by exactly 1/2.
    """
    i_star, j_star = varset(i_star), varset(j_star)
    if has_path(d, i_star, j_star):
        raise PathExistsError(f"{i_star} reaches {j_star}")
    pred = d.predecessor_map()
    reaching = {j_star}
    queue = deque([j_star])
    while queue:
        cur = queue.popleft()
        for p in pred[cur]:
            if p not in reaching:
                reaching.add(p)
                queue.append(p)
    half = Fraction(1, 2)
    return {n: (Fraction(0) if n in reaching else half) for n in d.nodes}


def project_relaxation(d: Linearization, targets: Iterable[VarSet]) -> IneqSystem:
    """Exact projection of the relaxation onto targets plus singletons.

    Eliminates the other non-singleton variables one at a time, cheapest
    pairing count first, pruning as it goes; the final system is passed
    through full redundancy removal.
    """
    keep = {varset(t) for t in targets}
    node_set = set(d.nodes)
    for t in keep:
        if t not in node_set:
            raise UnknownNodeError(f"target {t} is not a node")
    sys = relaxation_system(d)
    victims = {n for n in d.nodes if len(n) > 1 and n not in keep}
    while victims:
        counts: dict[VarSet, int] = {}
        for v in victims:
            pos = neg = 0
            for q in sys.ineqs:
                c = q.coeff(v)
                if c > 0:
                    pos += 1
                elif c < 0:
                    neg += 1
            if sys.box:
                pos += 1
                neg += 1
            counts[v] = pos * neg
        victim = min(victims, key=lambda v: (counts[v], key_order(v)))
        victims.remove(victim)
        sys = fast_prune(fm_eliminate(sys, victim, prune=False))
    return remove_redundant(sys)


def mccormick_from_flower(g: Hypergraph, f: ExtendedFlower) -> Linearization:
    """A binary partitioning linearization certifying a flower inequality.

    The center is partitioned into the fresh parts each neighbor
    contributes; a binary chain multiplies the parts back together, every
    neighbor hangs off its part, and remaining sets (including untouched
    edges) are completed by deterministic balanced splits with node reuse.
    The flower inequality is valid for the projection onto the edges.
    """
    validate_flower(g, f)
    if not is_nonredundant(g, f):
        culprits = [
            nb for nb, excl in zip(f.neighbors, exclusive_elements(f)) if not excl
        ]
        raise RedundantFlowerError(
            "these neighbors cover no center element exclusively: "
            + ", ".join(str(nb) for nb in culprits)
        )
    center = f.center
    parts: list[VarSet] = []
    covered: set[int] = set()
    for nb in f.neighbors:
        parts.append(varset(set(center) & (set(nb) - covered)))
        covered |= set(nb)

    nodes: set[VarSet] = {center, *parts, *((v,) for v in range(1, g.num_vars + 1))}
    arcs: set[Arc] = set()
    succ_of: set[VarSet] = set()  # nodes that already received successors

    def add_arcs(tail: VarSet, heads: Sequence[VarSet]) -> None:
        for h in heads:
            arcs.add((tail, h))
        succ_of.add(tail)

    k = len(parts)
    prefix = list(center)
    for i in range(k, 1, -1):
        upper = varset(prefix)
        prefix = sorted(set(prefix) - set(parts[i - 1]))
        lower = varset(prefix)
        nodes.add(lower)
        add_arcs(upper, [lower, parts[i - 1]])

    pending: deque[VarSet] = deque(parts)
    for nb, part in zip(f.neighbors, parts):
        if nb == part:
            continue
        remainder = varset(set(nb) - set(part))
        nodes.add(nb)
        nodes.add(remainder)
        add_arcs(nb, [part, remainder])
        pending.append(remainder)
    for edge in g.edges:
        if edge not in nodes:
            nodes.add(edge)
            pending.append(edge)
        elif edge not in succ_of and len(edge) > 1:
            pending.append(edge)

    while pending:
        cur = pending.popleft()
        if len(cur) == 1 or cur in succ_of:
            continue
        half = (len(cur) + 1) // 2
        left, right = cur[:half], cur[half:]
        nodes.add(left)
        nodes.add(right)
        add_arcs(cur, [left, right])
        pending.extend([left, right])

    lin, cls = validate_linearization(nodes, arcs, g)
    if not (cls.mccormick and cls.of_g):
        raise AssertionError("construction produced a non-McCormick digraph")
    return lin


def to_dot(d: Linearization) -> str:
    """Graphviz rendering with ``{a,b,c}`` node labels, deterministic order."""

    def label(n: VarSet) -> str:
        return "{" + ",".join(str(v) for v in n) + "}"

    lines = ["digraph linearization {"]
    for n in d.nodes:
        lines.append(f'  "{label(n)}";')
    for i, j in d.arcs:
        lines.append(f'  "{label(i)}" -> "{label(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
