"""JSON document formats for instances, linearizations and points.

All rationals travel as strings ("3/2") so documents stay exact; plain
integers are accepted on input.  Every document carries ``"format": 1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .errors import FormatError
from .linearization import LinClass, Linearization, validate_linearization
from .model import (
    Hypergraph,
    MultilinearInstance,
    Rational,
    VarKey,
    multilinear_instance,
    validate_hypergraph,
)
from .relaxations import ExtendedFlower, flower

FORMAT = 1


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {value!r}") from exc
    raise FormatError(f"not a rational: {value!r}")


def rational_str(value: Rational) -> str:
    return str(Fraction(value))


def _check_format(doc: Mapping[str, Any], what: str) -> None:
    if not isinstance(doc, Mapping):
        raise FormatError(f"{what} document must be a JSON object")
    version = doc.get("format", FORMAT)
    if version != FORMAT:
        raise FormatError(f"unsupported {what} format {version!r}")


def _monomial_vars(raw: Any) -> tuple[int, ...]:
    if not isinstance(raw, list) or not raw or not all(isinstance(v, int) for v in raw):
        raise FormatError(f"monomial vars must be a non-empty list of ints, got {raw!r}")
    if len(set(raw)) != len(raw):
        raise FormatError(
            f"monomial {raw} repeats a variable; exponents above 1 are not multilinear"
        )
    return tuple(sorted(raw))


def instance_from_dict(doc: Mapping[str, Any]) -> MultilinearInstance:
    """Build an instance; the hypergraph is derived from the monomials."""
    _check_format(doc, "instance")
    num_vars = doc.get("num_vars")
    if not isinstance(num_vars, int) or num_vars < 1:
        raise FormatError(f"num_vars must be a positive int, got {num_vars!r}")

    def read_terms(raw_terms: Any, where: str) -> list[tuple[Fraction, tuple[int, ...]]]:
        if not isinstance(raw_terms, list):
            raise FormatError(f"{where} must be a list of terms")
        out = []
        for raw in raw_terms:
            if not isinstance(raw, Mapping) or "coef" not in raw or "vars" not in raw:
                raise FormatError(f"each term needs 'coef' and 'vars', got {raw!r}")
            out.append((parse_rational(raw["coef"]), _monomial_vars(raw["vars"])))
        return out

    objective = read_terms(doc.get("objective", []), "objective")
    constraints = []
    for raw in doc.get("constraints", []):
        if not isinstance(raw, Mapping) or "terms" not in raw or "rhs" not in raw:
            raise FormatError(f"each constraint needs 'terms' and 'rhs', got {raw!r}")
        if raw.get("sense", "<=") != "<=":
            raise FormatError(f"only '<=' constraints are supported, got {raw.get('sense')!r}")
        constraints.append((read_terms(raw["terms"], "constraint"), parse_rational(raw["rhs"])))

    edge_sets = {key for _, key in objective if len(key) >= 2}
    for terms, _ in constraints:
        edge_sets.update(key for _, key in terms if len(key) >= 2)
    g = validate_hypergraph(num_vars, edge_sets) if edge_sets else Hypergraph(num_vars, ())
    return multilinear_instance(g, objective, constraints)


def instance_to_dict(inst: MultilinearInstance) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "num_vars": inst.hypergraph.num_vars,
        "objective": [
            {"coef": rational_str(c), "vars": list(key)} for c, key in inst.objective
        ],
        "constraints": [
            {
                "terms": [{"coef": rational_str(c), "vars": list(key)} for c, key in row.terms],
                "rhs": rational_str(row.rhs),
                "sense": "<=",
            }
            for row in inst.constraints
        ],
    }


def linearization_from_dict(
    doc: Mapping[str, Any], g: Hypergraph | None = None
) -> tuple[Linearization, LinClass]:
    """Nodes are member lists, arcs index into the node list; singletons are implied."""
    _check_format(doc, "linearization")
    raw_nodes = doc.get("nodes")
    if not isinstance(raw_nodes, list):
        raise FormatError("linearization needs a 'nodes' list")
    for n in raw_nodes:
        if not isinstance(n, list) or not all(isinstance(v, int) for v in n):
            raise FormatError(f"node {n!r} must be a list of ints")
    raw_arcs = doc.get("arcs", [])
    arcs = []
    for pair in raw_arcs:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(i, int) for i in pair)
        ):
            raise FormatError(f"arc {pair!r} must be a [from, to] index pair")
        i, j = pair
        if not (0 <= i < len(raw_nodes)) or not (0 <= j < len(raw_nodes)):
            raise FormatError(f"arc {pair!r} indexes outside the node list")
        arcs.append((raw_nodes[i], raw_nodes[j]))
    num_vars = doc.get("num_vars")
    if num_vars is not None and (not isinstance(num_vars, int) or num_vars < 1):
        raise FormatError(f"num_vars must be a positive int, got {num_vars!r}")
    return validate_linearization(raw_nodes, arcs, g=g, num_vars=num_vars)


def linearization_to_dict(d: Linearization) -> dict[str, Any]:
    index = {node: i for i, node in enumerate(d.nodes)}
    return {
        "format": FORMAT,
        "num_vars": d.num_vars,
        "nodes": [list(node) for node in d.nodes],
        "arcs": [[index[i], index[j]] for i, j in d.arcs],
    }


def point_from_dict(doc: Mapping[str, Any]) -> dict[VarKey, Fraction]:
    _check_format(doc, "point")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise FormatError("point needs an 'entries' list")
    point: dict[VarKey, Fraction] = {}
    for raw in entries:
        if not isinstance(raw, Mapping) or "vars" not in raw or "value" not in raw:
            raise FormatError(f"each entry needs 'vars' and 'value', got {raw!r}")
        key = tuple(sorted(set(raw["vars"])))
        if not key:
            raise FormatError("entry with empty vars")
        if key in point:
            raise FormatError(f"duplicate entry for {list(key)}")
        point[key] = parse_rational(raw["value"])
    return point


def point_to_dict(point: Mapping[VarKey, Rational]) -> dict[str, Any]:
    from .model import key_order

    return {
        "format": FORMAT,
        "entries": [
            {"vars": list(key), "value": rational_str(point[key])}
            for key in sorted(point, key=key_order)
        ],
    }


def flower_from_dict(doc: Mapping[str, Any]) -> ExtendedFlower:
    _check_format(doc, "flower")
    if "center" not in doc or "neighbors" not in doc:
        raise FormatError("flower needs 'center' and 'neighbors'")
    return flower(doc["center"], doc["neighbors"])


def flower_to_dict(f: ExtendedFlower) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "center": list(f.center),
        "neighbors": [list(nb) for nb in f.neighbors],
    }


def hypergraph_to_dict(g: Hypergraph) -> dict[str, Any]:
    return {"num_vars": g.num_vars, "edges": [list(e) for e in g.edges]}
