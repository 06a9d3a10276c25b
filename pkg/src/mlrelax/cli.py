"""Command-line client.

Each subcommand builds a request model, dispatches it (in-process by
default, over HTTP with ``--server``), and prints the response as JSON.
Exit codes: 0 for success or "holds", 1 when a mathematical counterexample
or violation was found, 2 for parse and usage errors.

Input paths may be files or ``bundled:<name>`` fixtures; see
``mlrelax fixtures``.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Callable, TypeVar

import click
import httpx
from pydantic import BaseModel, ValidationError

from .errors import InputError
from .fixtures import BUNDLED, bundled_doc
from .service import handlers, schemas

M = TypeVar("M", bound=BaseModel)


def _fail(*lines: str) -> None:
    for line in lines:
        click.echo(f"error: {line}", err=True)
    sys.exit(2)


def _load_doc(path: str, expected_kind: str) -> dict[str, Any]:
    if path.startswith("bundled:"):
        try:
            kind, doc = bundled_doc(path[len("bundled:") :])
        except InputError as exc:
            _fail(str(exc))
        if kind != expected_kind:
            _fail(f"{path} is a {kind} fixture, expected {expected_kind}")
        return doc
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(f"{path} is not valid JSON: {exc}")


def _as_model(doc: dict[str, Any], cls: type[M], origin: str) -> M:
    try:
        return cls.model_validate(doc)
    except ValidationError as exc:
        _fail(*[f"{origin}: {'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
                for err in exc.errors()])


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        _fail(f"{what} must be a comma-separated list of ints, got {text!r}")


def _dispatch(
    server: str | None,
    path: str,
    request: BaseModel,
    response_cls: type[M],
    handler: Callable[[Any], M],
) -> M:
    if server is None:
        try:
            return handler(request)
        except InputError as exc:
            _fail(str(exc))
    url = server.rstrip("/") + path
    try:
        resp = httpx.post(url, json=request.model_dump(), timeout=None)
    except httpx.HTTPError as exc:
        _fail(f"request to {url} failed: {exc}")
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        _fail(f"server rejected the request ({resp.status_code}): {detail}")
    return response_cls.model_validate(resp.json())


def _emit(model: BaseModel) -> None:
    click.echo(model.model_dump_json(indent=2))


_server_option = click.option(
    "--server", default=None, metavar="URL", help="Send the request to a running service."
)


@click.group()
def main() -> None:
    """Exact relaxations of multilinear sets: bounds, flowers, checks."""


@main.command()
@click.argument("instance_path")
@click.option(
    "--relaxation",
    type=click.Choice(["standard", "flower", "cutting-plane", "dynamic"]),
    default="standard",
    show_default=True,
)
@click.option("--lin", "lin_paths", multiple=True, metavar="FILE",
              help="Bound over the stacked relaxations of these digraphs.")
@click.option("--max-neighbors", type=int, default=None)
@click.option("--max-iters", type=int, default=200, show_default=True)
@click.option("--with-integer-opt", is_flag=True, help="Also report the exact 0/1 optimum.")
@_server_option
def bound(instance_path, relaxation, lin_paths, max_neighbors, max_iters, with_integer_opt, server):
    """LP bound of an instance under a chosen relaxation."""
    instance = _as_model(_load_doc(instance_path, "instance"), schemas.InstanceModel, instance_path)
    lins = [
        _as_model(_load_doc(p, "linearization"), schemas.LinearizationModel, p)
        for p in lin_paths
    ]
    req = schemas.BoundRequest(
        instance=instance,
        relaxation="linearizations" if lins else relaxation,
        max_neighbors=max_neighbors,
        max_iters=max_iters,
        linearizations=lins,
        with_integer_opt=with_integer_opt,
    )
    _emit(_dispatch(server, "/v1/bound", req, schemas.BoundReportModel, handlers.handle_bound))


@main.command()
@click.argument("what", type=click.Choice(
    ["lemma-projection", "lemma-path", "theorem", "fig3", "restrictions"]))
@click.argument("input_path", required=False)
@click.option("--edge", default=None, metavar="V,V,...",
              help="lemma-projection: remove only this edge.")
@click.option("--lin", "lin_paths", multiple=True, metavar="FILE",
              help="theorem: extra digraphs joining the intersection.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=20, show_default=True,
              help="Sample count for suite mode (no input path).")
@click.option("--extras", type=int, default=5, show_default=True,
              help="theorem suite: random digraphs per sampled instance.")
@click.option("--max-vars", type=int, default=5, show_default=True)
@click.option("--max-edges", type=int, default=4, show_default=True)
@_server_option
def check(what, input_path, edge, lin_paths, seed, samples, extras, max_vars, max_edges, server):
    """Machine-check a structural result; exit 0 when it holds.

    With an input path the check runs on that instance or digraph; without
    one it runs a seeded random suite.  `fig3` (alias `restrictions`)
    verifies the two built-in restriction digraphs.
    """
    what = "fig3" if what == "restrictions" else what
    instance = None
    linearization = None
    if input_path is not None:
        if what == "lemma-path":
            linearization = _as_model(
                _load_doc(input_path, "linearization"), schemas.LinearizationModel, input_path
            )
        elif what in ("lemma-projection", "theorem"):
            instance = _as_model(
                _load_doc(input_path, "instance"), schemas.InstanceModel, input_path
            )
        else:
            _fail(f"check {what} takes no input path")
    req = schemas.CheckRequest(
        check=what,
        instance=instance,
        linearization=linearization,
        extra_linearizations=[
            _as_model(_load_doc(p, "linearization"), schemas.LinearizationModel, p)
            for p in lin_paths
        ],
        edge=_int_list(edge, "--edge") if edge else None,
        seed=seed,
        samples=samples,
        extras_per_instance=extras,
        max_vars=max_vars,
        max_edges=max_edges,
    )
    report = _dispatch(server, "/v1/check", req, schemas.CheckReportModel, handlers.handle_check)
    _emit(report)
    sys.exit(0 if report.holds else 1)


@main.command()
@click.argument("instance_path")
@click.option("--center", required=True, metavar="V,V,...")
@click.option("--neighbor", "neighbors", multiple=True, required=True, metavar="V,V,...")
@click.option("--dot", "dot_path", default=None, metavar="FILE",
              help="Also write a Graphviz rendering.")
@_server_option
def construct(instance_path, center, neighbors, dot_path, server):
    """Build the McCormick linearization certifying a flower inequality."""
    instance = _as_model(_load_doc(instance_path, "instance"), schemas.InstanceModel, instance_path)
    req = schemas.ConstructRequest(
        instance=instance,
        center=_int_list(center, "--center"),
        neighbors=[_int_list(n, "--neighbor") for n in neighbors],
        dot=dot_path is not None,
    )
    resp = _dispatch(server, "/v1/construct", req, schemas.ConstructResponse, handlers.handle_construct)
    if resp.status == "redundant-flower":
        _emit(resp)
        sys.exit(1)
    if dot_path is not None:
        with open(dot_path, "w", encoding="utf-8") as handle:
            handle.write(resp.dot)
        resp = resp.model_copy(update={"dot": None})
    _emit(resp)


@main.command()
@click.argument("instance_path")
@click.option("--max-neighbors", type=int, default=None)
@click.option("--count-only", is_flag=True)
@_server_option
def flowers(instance_path, max_neighbors, count_only, server):
    """List or count the non-redundant extended flower inequalities."""
    instance = _as_model(_load_doc(instance_path, "instance"), schemas.InstanceModel, instance_path)
    req = schemas.FlowersRequest(
        instance=instance, max_neighbors=max_neighbors, count_only=count_only
    )
    _emit(_dispatch(server, "/v1/flowers", req, schemas.FlowersResponse, handlers.handle_flowers))


@main.command()
@click.argument("instance_path")
@click.argument("point_path")
@click.option("--max-neighbors", type=int, default=None)
@_server_option
def separate(instance_path, point_path, max_neighbors, server):
    """Most violated flower inequality at a point; exit 1 when one exists."""
    instance = _as_model(_load_doc(instance_path, "instance"), schemas.InstanceModel, instance_path)
    point = _as_model(_load_doc(point_path, "point"), schemas.PointModel, point_path)
    req = schemas.SeparateRequest(instance=instance, point=point, max_neighbors=max_neighbors)
    resp = _dispatch(server, "/v1/separate", req, schemas.SeparateResponse, handlers.handle_separate)
    _emit(resp)
    sys.exit(0 if resp.status == "none" else 1)


@main.command()
@click.option("--name", default=None, help="Print one fixture document.")
def fixtures(name):
    """List the bundled fixtures, or print one as JSON."""
    if name is None:
        for fixture_name, (kind, _) in sorted(BUNDLED.items()):
            click.echo(f"{fixture_name}\t{kind}")
        return
    try:
        _, doc = bundled_doc(name)
    except InputError as exc:
        _fail(str(exc))
    click.echo(json.dumps(doc, indent=2))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8118, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
