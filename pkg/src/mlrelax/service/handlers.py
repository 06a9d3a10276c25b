"""Pure request-to-response functions behind the endpoints and the CLI.

Handlers raise :class:`mlrelax.errors.InputError` for bad data; the HTTP
layer maps that to 400 and the CLI to exit code 2.  Mathematical outcomes
(a redundant flower, a violated inequality, a failed check) are encoded
in the response models, never as exceptions.
"""

from __future__ import annotations

from mlrelax.errors import RedundantFlowerError
from mlrelax.linearization import Linearization, mccormick_from_flower, to_dot
from mlrelax.model import Hypergraph, MultilinearInstance
from mlrelax.relaxations import enumerate_flowers, flower, flower_ineq, separate_flower
from mlrelax.serialize import (
    instance_from_dict,
    linearization_from_dict,
    linearization_to_dict,
    point_from_dict,
    rational_str,
)
from mlrelax.verify import (
    CheckReport,
    bound_cutting_plane,
    bound_dynamic_linearization,
    bound_static,
    check_path_lemma,
    check_projection_lemma,
    check_restriction_propositions,
    check_theorem,
    run_path_suite,
    run_projection_suite,
    run_theorem_suite,
)

from . import schemas


def _instance(model: schemas.InstanceModel) -> MultilinearInstance:
    return instance_from_dict(model.model_dump())


def _linearization(
    model: schemas.LinearizationModel, g: Hypergraph | None = None
) -> Linearization:
    lin, _ = linearization_from_dict(model.model_dump(), g)
    return lin


def _bound_model(report) -> schemas.BoundReportModel:
    return schemas.BoundReportModel(
        method=report.method,
        status=report.status,
        bound=None if report.bound is None else rational_str(report.bound),
        integer_opt=None if report.integer_opt is None else rational_str(report.integer_opt),
        rows_generated=report.rows_generated,
        iterations=report.iterations,
    )


def handle_bound(req: schemas.BoundRequest) -> schemas.BoundReportModel:
    inst = _instance(req.instance)
    if req.relaxation == "cutting-plane":
        report = bound_cutting_plane(
            inst, req.max_neighbors, req.max_iters, req.with_integer_opt
        )
    elif req.relaxation == "dynamic":
        report = bound_dynamic_linearization(
            inst, req.max_neighbors, req.max_iters, req.with_integer_opt
        )
    elif req.relaxation == "linearizations":
        lins = [_linearization(m, inst.hypergraph) for m in req.linearizations]
        report = bound_static(
            inst, "linearizations", linearizations=lins, with_integer_opt=req.with_integer_opt
        )
    else:
        report = bound_static(
            inst, req.relaxation, req.max_neighbors, with_integer_opt=req.with_integer_opt
        )
    return _bound_model(report)


def _check_model(report: CheckReport) -> schemas.CheckReportModel:
    return schemas.CheckReportModel(
        name=report.name,
        holds=report.holds,
        counterexample=report.counterexample,
        stats=report.stats,
    )


def handle_check(req: schemas.CheckRequest) -> schemas.CheckReportModel:
    if req.check == "fig3":
        return _check_model(check_restriction_propositions())
    if req.check == "lemma-projection":
        if req.instance is None:
            return _check_model(
                run_projection_suite(req.seed, req.samples, req.max_vars, req.max_edges)
            )
        g = _instance(req.instance).hypergraph
        edges = [tuple(sorted(req.edge))] if req.edge else list(g.edges)
        lp_calls = 0
        for edge in edges:
            report = check_projection_lemma(g, edge, req.max_vars, req.max_edges)
            if not report.holds:
                return _check_model(report)
            lp_calls += int(report.stats.get("lp_calls", 0))
        return _check_model(
            CheckReport(
                "projection-lemma", True, None,
                {"projections": len(edges), "lp_calls": lp_calls},
            )
        )
    if req.check == "lemma-path":
        if req.linearization is None:
            return _check_model(run_path_suite(req.seed, req.samples))
        lin = _linearization(req.linearization)
        return _check_model(check_path_lemma(lin))
    # theorem
    if req.instance is None:
        return _check_model(
            run_theorem_suite(
                req.seed, req.samples, req.max_vars, req.max_edges, req.extras_per_instance
            )
        )
    inst = _instance(req.instance)
    extras = [_linearization(m, inst.hypergraph) for m in req.extra_linearizations]
    return _check_model(
        check_theorem(inst.hypergraph, extras, req.max_vars, req.max_edges)
    )


def handle_construct(req: schemas.ConstructRequest) -> schemas.ConstructResponse:
    inst = _instance(req.instance)
    f = flower(req.center, req.neighbors)
    try:
        lin = mccormick_from_flower(inst.hypergraph, f)
    except RedundantFlowerError as exc:
        return schemas.ConstructResponse(status="redundant-flower", diagnosis=str(exc))
    doc = linearization_to_dict(lin)
    return schemas.ConstructResponse(
        status="ok",
        linearization=schemas.LinearizationModel(**doc),
        dot=to_dot(lin) if req.dot else None,
    )


def handle_flowers(req: schemas.FlowersRequest) -> schemas.FlowersResponse:
    inst = _instance(req.instance)
    found = enumerate_flowers(inst.hypergraph, req.max_neighbors)
    with_edge = sum(1 for f, _ in found if any(len(nb) > 1 for nb in f.neighbors))
    counts = schemas.FlowerCountsModel(
        total=len(found),
        with_edge_neighbor=with_edge,
        all_singleton=len(found) - with_edge,
    )
    if req.count_only:
        return schemas.FlowersResponse(counts=counts)
    infos = [
        schemas.FlowerInfoModel(
            center=list(f.center),
            neighbors=[list(nb) for nb in f.neighbors],
            kind=kind,
            row=str(flower_ineq(f)),
        )
        for f, kind in found
    ]
    return schemas.FlowersResponse(counts=counts, flowers=infos)


def handle_separate(req: schemas.SeparateRequest) -> schemas.SeparateResponse:
    inst = _instance(req.instance)
    point = point_from_dict(req.point.model_dump())
    violation = separate_flower(inst.hypergraph, point, req.max_neighbors)
    if violation is None:
        return schemas.SeparateResponse(status="none")
    return schemas.SeparateResponse(
        status="violated",
        flower=schemas.FlowerModel(
            center=list(violation.flower.center),
            neighbors=[list(nb) for nb in violation.flower.neighbors],
        ),
        violation=rational_str(violation.amount),
    )
