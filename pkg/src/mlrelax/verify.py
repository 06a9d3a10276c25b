"""Machine checks of the structural results and LP bound harnesses.

Every check returns a :class:`CheckReport`; a failed report always carries
a replayable counterexample (a row plus a witness point, or an offending
instance) that the membership and validity operations confirm.  All
randomness is seeded and documented so suites are reproducible: random
hypergraphs draw edges uniformly among subsets of size 2..4, random
linearizations recursively split each edge with occasional overlaps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import simplex
from .errors import InfeasibleError, InputError, NotOfHypergraphError, TooLargeError
from .linearization import (
    Linearization,
    classify,
    has_path,
    mccormick_from_flower,
    nonpath_witness,
    project_relaxation,
    relaxation_system,
    standard_linearization,
    validate_linearization,
)
from .model import (
    Hypergraph,
    MultilinearInstance,
    VarKey,
    VarSet,
    integer_optimum,
    iter_ml_vertices,
    key_order,
    varset,
)
from .polyhedra import (
    IneqSystem,
    LinIneq,
    box_rows,
    fm_eliminate,
    is_member,
    is_valid,
    lin_ineq,
    lin_ineq_le,
    lp_solve,
    remove_redundant,
)
from .relaxations import (
    enumerate_flowers,
    flower_ineq,
    flower_relaxation,
    separate_flower,
    standard_relaxation,
)
from .serialize import (
    flower_to_dict,
    hypergraph_to_dict,
    linearization_to_dict,
    point_to_dict,
    rational_str,
)


@dataclass
class CheckReport:
    name: str
    holds: bool
    counterexample: dict | None = None
    stats: dict[str, int | str] = field(default_factory=dict)


@dataclass
class BoundReport:
    method: str
    status: str  # "optimal" | "infeasible"
    bound: Fraction | None
    integer_opt: Fraction | None = None
    rows_generated: int = 0
    iterations: int = 0


def _lp_calls() -> int:
    return simplex.STATS["lp_calls"]


def _containment_gap(inner: IneqSystem, outer: IneqSystem) -> dict | None:
    """A row of ``outer`` that ``inner`` violates, with a witness point."""
    shared = set(inner.ineqs) & set(outer.ineqs) if inner.box == outer.box else set()
    rows = list(outer.ineqs)
    if outer.box and not inner.box:
        rows.extend(box_rows(outer.vars))
    for q in rows:
        if q in shared:
            continue
        if not is_valid(inner, q):
            witness = lp_solve(inner, dict(q.terms), "min")
            gap: dict = {"row": str(q)}
            if witness.status == "optimal":
                gap["point"] = point_to_dict(witness.point)
                gap["row_value"] = rational_str(witness.value)
                gap["row_rhs"] = rational_str(q.rhs)
            return gap
    return None


def _equality_gap(a: IneqSystem, b: IneqSystem) -> dict | None:
    gap = _containment_gap(a, b)
    if gap is not None:
        gap["direction"] = "first system is not contained in the second"
        return gap
    gap = _containment_gap(b, a)
    if gap is not None:
        gap["direction"] = "second system is not contained in the first"
        return gap
    return None


def check_projection_lemma(
    g: Hypergraph, i_star: VarSet, max_vars: int = 5, max_edges: int = 5
) -> CheckReport:
    """Eliminating one edge variable from the flower relaxation must give
    the flower relaxation of the hypergraph without that edge."""
    if g.num_vars > max_vars or len(g.edges) > max_edges:
        raise TooLargeError(
            f"instance exceeds the desk-scale guard ({max_vars} vars, {max_edges} edges)"
        )
    i_star = varset(i_star)
    before = _lp_calls()
    fr = flower_relaxation(g)
    projected = fm_eliminate(fr, i_star, prune=True)
    target = flower_relaxation(g.without_edge(i_star))
    gap = _equality_gap(projected, target)
    return CheckReport(
        name="projection-lemma",
        holds=gap is None,
        counterexample=None
        if gap is None
        else {"hypergraph": hypergraph_to_dict(g), "removed_edge": list(i_star), **gap},
        stats={
            "relaxation_rows": len(fr.ineqs),
            "projected_rows": len(projected.ineqs),
            "target_rows": len(target.ineqs),
            "lp_calls": _lp_calls() - before,
        },
    )


def check_path_lemma(d: Linearization, max_nodes: int = 12) -> CheckReport:
    """Row ``z_i <= z_j`` is LP-valid exactly when an arc path i -> j exists.

    Reachable pairs are confirmed by an exact LP; unreachable pairs by the
    constructed witness point, which must be feasible and violating.
    """
    if len(d.nodes) > max_nodes:
        raise TooLargeError(f"{len(d.nodes)} nodes exceed the guard of {max_nodes}")
    before = _lp_calls()
    system = relaxation_system(d)
    pairs = 0
    for i in d.nodes:
        for j in d.nodes:
            if i == j:
                continue
            pairs += 1
            row = lin_ineq({j: 1, i: -1}, 0)
            if has_path(d, i, j):
                if not is_valid(system, row):
                    return CheckReport(
                        "path-lemma",
                        False,
                        {
                            "linearization": linearization_to_dict(d),
                            "pair": [list(i), list(j)],
                            "reachable": True,
                            "row": str(row),
                        },
                    )
            else:
                witness = nonpath_witness(d, i, j)
                ok, violated = is_member(system, witness)
                if not ok or row.evaluate(witness) >= row.rhs:
                    return CheckReport(
                        "path-lemma",
                        False,
                        {
                            "linearization": linearization_to_dict(d),
                            "pair": [list(i), list(j)],
                            "reachable": False,
                            "witness": point_to_dict(witness),
                            "witness_feasible": ok,
                        },
                    )
    return CheckReport(
        "path-lemma",
        True,
        None,
        {"pairs": pairs, "rows": len(system.ineqs), "lp_calls": _lp_calls() - before},
    )


def check_theorem(
    g: Hypergraph,
    extra_linearizations: Sequence[Linearization] = (),
    max_vars: int = 5,
    max_edges: int = 4,
) -> CheckReport:
    """The flower relaxation equals the intersection of the projected
    relaxations of the constructive linearization family.

    The family is the standard linearization plus one McCormick
    linearization per non-redundant flower; supplied extras join the
    intersection and are additionally checked for one-sided containment.
    """
    if g.num_vars > max_vars or len(g.edges) > max_edges:
        raise TooLargeError(
            f"instance exceeds the desk-scale guard ({max_vars} vars, {max_edges} edges)"
        )
    before = _lp_calls()
    fr = flower_relaxation(g)
    frp = remove_redundant(fr)
    flowers = enumerate_flowers(g)

    systems: list[IneqSystem] = [relaxation_system(standard_linearization(g))]
    for f, _ in flowers:
        systems.append(project_relaxation(mccormick_from_flower(g, f), g.edges))
    for d in extra_linearizations:
        cls = classify(d, g)
        if not cls.of_g:
            raise NotOfHypergraphError("extra digraph is not a linearization of the hypergraph")
        proj = project_relaxation(d, g.edges)
        gap = _containment_gap(frp, proj)
        if gap is not None:
            return CheckReport(
                "equivalence",
                False,
                {
                    "hypergraph": hypergraph_to_dict(g),
                    "linearization": linearization_to_dict(d),
                    "reason": "flower relaxation is not inside the projected relaxation",
                    **gap,
                },
            )
        systems.append(proj)

    rows: list[LinIneq] = []
    seen: set[LinIneq] = set()
    for s in systems:
        for q in s.ineqs:
            if q not in seen:
                seen.add(q)
                rows.append(q)
    q_sys = remove_redundant(IneqSystem(fr.vars, tuple(rows), box=True))
    gap = _equality_gap(frp, q_sys)
    return CheckReport(
        name="equivalence",
        holds=gap is None,
        counterexample=None
        if gap is None
        else {"hypergraph": hypergraph_to_dict(g), **gap},
        stats={
            "flowers": len(flowers),
            "linearizations": len(systems),
            "flower_rows": len(frp.ineqs),
            "intersection_rows": len(q_sys.ineqs),
            "lp_calls": _lp_calls() - before,
        },
    )


def _set_partitions(members: tuple[int, ...]) -> Iterable[list[tuple[int, ...]]]:
    """All partitions of a set into at least two blocks."""

    def rec(items: tuple[int, ...]) -> Iterable[list[list[int]]]:
        if not items:
            yield []
            return
        head, tail = items[0], items[1:]
        for part in rec(tail):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1 :]
            yield [[head]] + part

    for raw in rec(members):
        if len(raw) >= 2:
            yield [tuple(sorted(block)) for block in raw]


def _partitioning_linearizations_3() -> list[Linearization]:
    """Every partitioning linearization of the 3-variable split instance."""
    from .fixtures import split3_hypergraph

    g = split3_hypergraph()
    base = list(g.edges)
    optional: list[VarSet] = [(1, 3)]
    out: list[Linearization] = []
    for use_extra in (False, True):
        nodes = base + (optional if use_extra else [])
        choices: list[list[list[tuple[int, ...]]]] = []
        node_set = set(nodes) | {(v,) for v in range(1, 4)}
        for n in nodes:
            opts = [p for p in _set_partitions(n) if all(b in node_set for b in p)]
            choices.append(opts)
        import itertools

        for combo in itertools.product(*choices):
            arcs = [(n, block) for n, parts in zip(nodes, combo) for block in parts]
            try:
                lin, cls = validate_linearization(nodes, arcs, g)
            except Exception:
                continue
            if cls.partitioning and cls.of_g:
                out.append(lin)
    return out


def check_restriction_propositions() -> CheckReport:
    """Two built-in digraphs witness that partitioning and binary
    linearizations are strictly weaker than general recursive ones.

    Part one exhaustively enumerates the partitioning linearizations of
    the 3-variable instance and confirms none of their projections is
    inside the non-partitioning digraph's relaxation.  Part two confirms
    the arc-implied rows of the 6-variable digraph by exact LPs.
    """
    from .fixtures import split3_linearization, split6_linearization

    before = _lp_calls()
    target = relaxation_system(split3_linearization())
    candidates = _partitioning_linearizations_3()
    dominated: list[Linearization] = []
    for lin in candidates:
        proj = project_relaxation(lin, ((1, 2, 3), (1, 2), (2, 3)))
        if all(is_valid(proj, q) for q in target.ineqs):
            dominated.append(lin)
    part_a = not dominated

    d6 = split6_linearization()
    system6 = relaxation_system(d6)
    facts = [
        ((1, 2, 3, 4), (1, 3)),
        ((1, 2, 3, 4), (2, 4)),
        ((1, 2, 3, 4, 5, 6), (1, 2)),
        ((1, 2, 3, 4, 5, 6), (3, 4)),
        ((1, 2, 3, 4, 5, 6), (5, 6)),
    ]
    failed_facts = []
    for tail, head in facts:
        row = lin_ineq({head: 1, tail: -1}, 0)
        if not is_valid(system6, row):
            failed_facts.append(str(row))
    part_b = not failed_facts

    counterexample = None
    if not part_a:
        counterexample = {
            "reason": "a partitioning linearization dominates the non-partitioning digraph",
            "linearization": linearization_to_dict(dominated[0]),
        }
    elif not part_b:
        counterexample = {"reason": "an arc-implied row is not LP-valid", "rows": failed_facts}
    return CheckReport(
        name="restriction-propositions",
        holds=part_a and part_b,
        counterexample=counterexample,
        stats={
            "partitioning_candidates": len(candidates),
            "validity_facts": len(facts),
            "lp_calls": _lp_calls() - before,
        },
    )


# Bound harnesses

def _objective_of(inst: MultilinearInstance) -> dict[VarKey, Fraction]:
    obj: dict[VarKey, Fraction] = {}
    for coef, key in inst.objective:
        obj[key] = obj.get(key, Fraction(0)) + coef
    return obj


def _constraint_rows(inst: MultilinearInstance) -> list[LinIneq]:
    return [lin_ineq_le({key: c for c, key in row.terms}, row.rhs) for row in inst.constraints]


def _with_rows(sys: IneqSystem, rows: Iterable[LinIneq]) -> IneqSystem:
    extra = [q for q in rows if q not in set(sys.ineqs)]
    return IneqSystem(sys.vars, sys.ineqs + tuple(extra), sys.box)


def bound_static(
    inst: MultilinearInstance,
    relaxation: str = "standard",
    max_neighbors: int | None = None,
    linearizations: Sequence[Linearization] = (),
    with_integer_opt: bool = False,
) -> BoundReport:
    """One LP over a fixed relaxation plus the instance constraints.

    ``relaxation`` is "standard", "flower", or "linearizations" (stack the
    relaxation systems of the given digraphs over shared variable keys).
    """
    g = inst.hypergraph
    if relaxation == "standard":
        sys = standard_relaxation(g)
    elif relaxation == "flower":
        sys = flower_relaxation(g, max_neighbors)
    elif relaxation == "linearizations":
        if not linearizations:
            raise InputError("the 'linearizations' relaxation needs at least one digraph")
        keys: set[VarKey] = set(g.all_keys())
        rows: list[LinIneq] = []
        seen: set[LinIneq] = set()
        for d in linearizations:
            cls = classify(d, g)
            if not cls.of_g:
                raise NotOfHypergraphError("digraph is not a linearization of the instance hypergraph")
            keys.update(d.nodes)
            for q in relaxation_system(d).ineqs:
                if q not in seen:
                    seen.add(q)
                    rows.append(q)
        sys = IneqSystem(tuple(sorted(keys, key=key_order)), tuple(rows), box=True)
    else:
        raise ValueError(f"unknown relaxation {relaxation!r}")
    sys = _with_rows(sys, _constraint_rows(inst))
    out = lp_solve(sys, _objective_of(inst), "min")
    integer_opt = None
    if with_integer_opt:
        try:
            integer_opt, _ = integer_optimum(inst)
        except InfeasibleError:
            integer_opt = None
    if out.status != "optimal":
        return BoundReport(relaxation, "infeasible", None, integer_opt, 0, 1)
    return BoundReport(relaxation, "optimal", out.value, integer_opt, 0, 1)


def bound_cutting_plane(
    inst: MultilinearInstance,
    max_neighbors: int | None = None,
    max_iters: int = 200,
    with_integer_opt: bool = False,
) -> BoundReport:
    """Row generation: solve, separate a flower, add the row, repeat.

    Run to completion this matches the static flower bound exactly;
    ``max_iters`` caps the number of separation rounds.
    """
    g = inst.hypergraph
    sys = _with_rows(standard_relaxation(g), _constraint_rows(inst))
    obj = _objective_of(inst)
    cuts = 0
    iterations = 0
    bound: Fraction | None = None
    while True:
        out = lp_solve(sys, obj, "min")
        iterations += 1
        if out.status != "optimal":
            return BoundReport("cutting-plane", "infeasible", None, None, cuts, iterations)
        bound = out.value
        if cuts >= max_iters:
            break
        violation = separate_flower(g, out.point, max_neighbors)
        if violation is None:
            break
        sys = _with_rows(sys, [flower_ineq(violation.flower)])
        cuts += 1
    integer_opt = None
    if with_integer_opt:
        try:
            integer_opt, _ = integer_optimum(inst)
        except InfeasibleError:
            integer_opt = None
    return BoundReport("cutting-plane", "optimal", bound, integer_opt, cuts, iterations)


def bound_dynamic_linearization(
    inst: MultilinearInstance,
    max_neighbors: int | None = None,
    max_iters: int = 200,
    with_integer_opt: bool = False,
) -> BoundReport:
    """Row generation that answers each violated flower with the rows of
    its McCormick linearization, unifying auxiliary variables by key.

    The added system implies the separated cut, so at completion the bound
    is at least the cutting-plane bound.
    """
    g = inst.hypergraph
    sys = _with_rows(standard_relaxation(g), _constraint_rows(inst))
    obj = _objective_of(inst)
    rounds = 0
    iterations = 0
    rows_added = 0
    bound: Fraction | None = None
    while True:
        out = lp_solve(sys, obj, "min")
        iterations += 1
        if out.status != "optimal":
            return BoundReport("dynamic-linearization", "infeasible", None, None, rows_added, iterations)
        bound = out.value
        if rounds >= max_iters:
            break
        violation = separate_flower(g, out.point, max_neighbors)
        if violation is None:
            break
        d = mccormick_from_flower(g, violation.flower)
        new_keys = sorted(set(sys.vars) | set(d.nodes), key=key_order)
        existing = set(sys.ineqs)
        fresh = [q for q in relaxation_system(d).ineqs if q not in existing]
        sys = IneqSystem(tuple(new_keys), sys.ineqs + tuple(fresh), box=True)
        rows_added += len(fresh)
        rounds += 1
    integer_opt = None
    if with_integer_opt:
        try:
            integer_opt, _ = integer_optimum(inst)
        except InfeasibleError:
            integer_opt = None
    return BoundReport("dynamic-linearization", "optimal", bound, integer_opt, rows_added, iterations)


# Seeded samplers

def random_hypergraph(
    rng: random.Random, max_vars: int, max_edges: int, min_vars: int = 2
) -> Hypergraph:
    """Uniform edge sizes in 2..4 over a uniform ground-set size."""
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(1, max_edges)
    edges: set[tuple[int, ...]] = set()
    for _ in range(50 * m):
        if len(edges) == m:
            break
        size = rng.randint(2, min(4, n))
        edges.add(tuple(sorted(rng.sample(range(1, n + 1), size))))
    from .model import validate_hypergraph

    return validate_hypergraph(n, sorted(edges))


def random_linearization(
    rng: random.Random, g: Hypergraph, max_nodes: int = 12
) -> Linearization:
    """A random valid linearization of g: recursive random covers.

    Nodes split into two or three blocks; with some probability one block
    gains an extra member (a non-partitioning overlap).  When the node
    budget runs out the split falls back to singletons.
    """
    nodes: set[VarSet] = set(g.edges) | {(v,) for v in range(1, g.num_vars + 1)}
    arcs: list[tuple[VarSet, VarSet]] = []
    done: set[VarSet] = set()
    pending: list[VarSet] = sorted(set(g.edges), key=key_order)
    while pending:
        node = pending.pop(0)
        if len(node) == 1 or node in done:
            continue
        done.add(node)
        members = list(node)
        rng.shuffle(members)
        t = rng.randint(2, min(3, len(members)))
        bounds = sorted(rng.sample(range(1, len(members)), t - 1))
        blocks = [
            varset(members[lo:hi])
            for lo, hi in zip([0, *bounds], [*bounds, len(members)])
        ]
        if rng.random() < 0.35:
            i = rng.randrange(len(blocks))
            grown = varset(set(blocks[i]) | {rng.choice(members)})
            if set(grown) < set(node):
                blocks[i] = grown
        blocks = sorted(set(blocks), key=key_order)
        union = set().union(*(set(b) for b in blocks))
        new = [b for b in blocks if b not in nodes]
        if len(blocks) < 2 or union != set(node) or len(nodes) + len(new) > max_nodes:
            blocks = [(v,) for v in node]
        for b in blocks:
            nodes.add(b)
            arcs.append((node, b))
            if len(b) > 1 and b not in done:
                pending.append(b)
    lin, cls = validate_linearization(nodes, arcs, g)
    if not cls.of_g:
        raise AssertionError("sampler produced a digraph outside the hypergraph family")
    return lin


# Seeded suites

def run_validity_suite(
    seed: int = 20240, samples: int = 100, max_vars: int = 8, max_edges: int = 5
) -> CheckReport:
    """Every enumerated flower inequality holds at every 0/1 vertex."""
    rng = random.Random(seed)
    flowers_checked = 0
    for index in range(samples):
        g = random_hypergraph(rng, max_vars, max_edges)
        rows = [flower_ineq(f) for f, _ in enumerate_flowers(g)]
        flowers_checked += len(rows)
        for vertex in iter_ml_vertices(g):
            for row in rows:
                if row.evaluate(vertex) < row.rhs:
                    return CheckReport(
                        "flower-validity-suite",
                        False,
                        {
                            "sample": index,
                            "hypergraph": hypergraph_to_dict(g),
                            "row": str(row),
                            "vertex": point_to_dict(vertex),
                        },
                    )
    return CheckReport(
        "flower-validity-suite",
        True,
        None,
        {"samples": samples, "flowers": flowers_checked, "seed": seed},
    )


def run_projection_suite(
    seed: int = 20241, samples: int = 50, max_vars: int = 5, max_edges: int = 4
) -> CheckReport:
    rng = random.Random(seed)
    checks = 0
    before = _lp_calls()
    for index in range(samples):
        g = random_hypergraph(rng, max_vars, max_edges)
        for edge in g.edges:
            report = check_projection_lemma(g, edge, max_vars, max_edges)
            checks += 1
            if not report.holds:
                report.counterexample["sample"] = index
                return CheckReport("projection-lemma-suite", False, report.counterexample)
    return CheckReport(
        "projection-lemma-suite",
        True,
        None,
        {"samples": samples, "projections": checks, "seed": seed, "lp_calls": _lp_calls() - before},
    )


def run_path_suite(
    seed: int = 20242, samples: int = 50, max_nodes: int = 12
) -> CheckReport:
    rng = random.Random(seed)
    pairs = 0
    before = _lp_calls()
    for index in range(samples):
        g = random_hypergraph(rng, 5, 3)
        d = random_linearization(rng, g, max_nodes)
        report = check_path_lemma(d, max_nodes)
        if not report.holds:
            report.counterexample["sample"] = index
            return CheckReport("path-lemma-suite", False, report.counterexample)
        pairs += int(report.stats["pairs"])
    return CheckReport(
        "path-lemma-suite",
        True,
        None,
        {"samples": samples, "pairs": pairs, "seed": seed, "lp_calls": _lp_calls() - before},
    )


def run_theorem_suite(
    seed: int = 20243,
    samples: int = 50,
    max_vars: int = 5,
    max_edges: int = 4,
    extras_per_instance: int = 20,
) -> CheckReport:
    rng = random.Random(seed)
    before = _lp_calls()
    for index in range(samples):
        g = random_hypergraph(rng, max_vars, max_edges)
        extras = [
            random_linearization(rng, g, max_nodes=len(g.all_keys()) + 4)
            for _ in range(extras_per_instance)
        ]
        report = check_theorem(g, extras, max_vars, max_edges)
        if not report.holds:
            report.counterexample["sample"] = index
            return CheckReport("equivalence-suite", False, report.counterexample)
    return CheckReport(
        "equivalence-suite",
        True,
        None,
        {
            "samples": samples,
            "extras_per_instance": extras_per_instance,
            "seed": seed,
            "lp_calls": _lp_calls() - before,
        },
    )


def run_bound_suite(seed: int = 20244, samples: int = 20) -> CheckReport:
    """Sandwich and completion identities on random objectives in -3..3."""
    from .model import multilinear_instance

    rng = random.Random(seed)
    for index in range(samples):
        g = random_hypergraph(rng, 5, 4)
        terms = [(Fraction(rng.randint(-3, 3)), key) for key in g.all_keys()]
        inst = multilinear_instance(g, [(c, k) for c, k in terms if c])
        std = bound_static(inst, "standard")
        flw = bound_static(inst, "flower")
        opt, _ = integer_optimum(inst)
        cut = bound_cutting_plane(inst)
        failure = None
        if not (std.bound <= flw.bound <= opt):
            failure = "sandwich violated"
        elif cut.bound != flw.bound:
            failure = "completed cutting-plane bound differs from the static flower bound"
        if failure:
            return CheckReport(
                "bound-suite",
                False,
                {
                    "sample": index,
                    "hypergraph": hypergraph_to_dict(g),
                    "objective": [[rational_str(c), list(k)] for c, k in inst.objective],
                    "standard": rational_str(std.bound),
                    "flower": rational_str(flw.bound),
                    "integer": rational_str(opt),
                    "cutting_plane": rational_str(cut.bound),
                    "reason": failure,
                },
            )
    return CheckReport("bound-suite", True, None, {"samples": samples, "seed": seed})
