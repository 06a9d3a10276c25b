"""Built-in desk-scale instances, digraphs and points.

These ship with the package so checks and demos run without authoring
files.  The CLI and the service resolve them under ``bundled:<name>``.

Families:

* ``demo4``: four variables, three overlapping monomials; comes with the
  standard linearization, a McCormick chain through the shared pair
  ``{2,3}``, a binary non-partitioning variant, and three fractional
  points that tell the three relaxations apart.
* ``star<k>``: a hub pair ``{1,2}`` shared by k triple edges; the flower
  family here collapses into a single extra product variable.
* ``split3`` / ``split6``: digraphs showing that partitioning (resp.
  binary) linearizations are strictly weaker than general ones.
* ``wide15``: a four-neighbor flower over 15 variables exercising the
  flower-to-McCormick construction at width.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable

from .errors import FormatError
from .linearization import Linearization, validate_linearization
from .model import Hypergraph, MultilinearInstance, VarKey, multilinear_instance, validate_hypergraph
from .relaxations import ExtendedFlower, flower
from .serialize import (
    flower_to_dict,
    instance_to_dict,
    linearization_to_dict,
    point_to_dict,
)

Point = dict[VarKey, Fraction]

_HALF = Fraction(1, 2)


def demo4_hypergraph() -> Hypergraph:
    return validate_hypergraph(4, [[1, 2, 3], [2, 3, 4], [1, 2]])


def demo4_instance() -> MultilinearInstance:
    g = demo4_hypergraph()
    return multilinear_instance(g, [(1, (1, 2, 3)), (1, (2, 3, 4)), (1, (1, 2))])


def demo4_linearizations() -> dict[str, Linearization]:
    g = demo4_hypergraph()
    standard = [
        ([1, 2, 3], [1]), ([1, 2, 3], [2]), ([1, 2, 3], [3]),
        ([2, 3, 4], [2]), ([2, 3, 4], [3]), ([2, 3, 4], [4]),
        ([1, 2], [1]), ([1, 2], [2]),
    ]
    chain = [
        ([1, 2, 3], [1]), ([1, 2, 3], [2, 3]),
        ([2, 3, 4], [2, 3]), ([2, 3, 4], [4]),
        ([1, 2], [1]), ([1, 2], [2]),
        ([2, 3], [2]), ([2, 3], [3]),
    ]
    overlap = [
        ([1, 2, 3], [1, 2]), ([1, 2, 3], [2, 3]),
        ([2, 3, 4], [2, 3]), ([2, 3, 4], [4]),
        ([1, 2], [1]), ([1, 2], [2]),
        ([2, 3], [2]), ([2, 3], [3]),
    ]
    nodes = [[1, 2, 3], [2, 3, 4], [1, 2], [2, 3]]
    return {
        "standard": validate_linearization([[1, 2, 3], [2, 3, 4], [1, 2]], standard, g)[0],
        "chain": validate_linearization(nodes, chain, g)[0],
        "overlap": validate_linearization(nodes, overlap, g)[0],
    }


def demo4_points() -> dict[str, Point]:
    ones = {(1,): _HALF, (2,): _HALF, (3,): _HALF, (4,): _HALF}
    p1 = dict(ones)
    p1.update({(4,): Fraction(1), (2, 3, 4): Fraction(0), (1, 2, 3): _HALF, (1, 2): _HALF})
    p2 = dict(ones)
    p2.update({(1,): Fraction(1), (1, 2, 3): Fraction(0), (2, 3, 4): _HALF, (1, 2): _HALF})
    p3 = dict(ones)
    p3.update({(1, 2): Fraction(0), (1, 2, 3): _HALF, (2, 3, 4): _HALF})
    return {"p1": p1, "p2": p2, "p3": p3}


def star_hypergraph(k: int) -> Hypergraph:
    """Hub pair {1,2} plus petals v_i = 2+i, edges {1,2,v_i}."""
    if k < 2:
        raise ValueError("the star family needs at least 2 edges")
    return validate_hypergraph(k + 2, [[1, 2, 2 + i] for i in range(1, k + 1)])


def star_instance(k: int) -> MultilinearInstance:
    """Objective with a fractional standard-LP optimum cut by one flower.

    Every edge appears as a monomial so the instance round-trips through
    the file format with its full hypergraph.
    """
    g = star_hypergraph(k)
    e1, e2 = (1, 2, 3), (1, 2, 4)
    terms = [(1, e1), (-1, e2), (-1, (3,))]
    terms += [(1, edge) for edge in g.edges if edge not in (e1, e2)]
    return multilinear_instance(g, terms)


def split3_hypergraph() -> Hypergraph:
    return validate_hypergraph(3, [[1, 2, 3], [1, 2], [2, 3]])


def split3_linearization() -> Linearization:
    g = split3_hypergraph()
    arcs = [
        ([1, 2, 3], [1, 2]), ([1, 2, 3], [2, 3]),
        ([1, 2], [1]), ([1, 2], [2]),
        ([2, 3], [2]), ([2, 3], [3]),
    ]
    return validate_linearization([[1, 2, 3], [1, 2], [2, 3]], arcs, g)[0]


def split6_hypergraph() -> Hypergraph:
    return validate_hypergraph(
        6, [[1, 2, 3, 4, 5, 6], [1, 2, 3, 4], [1, 2, 5, 6], [3, 4, 5, 6]]
    )


def split6_linearization() -> Linearization:
    g = split6_hypergraph()
    nodes = [
        [1, 2, 3, 4, 5, 6], [1, 2, 3, 4], [1, 2, 5, 6], [3, 4, 5, 6],
        [1, 2], [3, 4], [5, 6], [1, 3], [2, 4], [1, 5], [2, 6], [3, 5], [4, 6],
    ]
    arcs = [
        ([1, 2, 3, 4, 5, 6], [1, 2]), ([1, 2, 3, 4, 5, 6], [3, 4]), ([1, 2, 3, 4, 5, 6], [5, 6]),
        ([1, 2, 3, 4], [1, 3]), ([1, 2, 3, 4], [2, 4]),
        ([1, 2, 5, 6], [1, 5]), ([1, 2, 5, 6], [2, 6]),
        ([3, 4, 5, 6], [3, 5]), ([3, 4, 5, 6], [4, 6]),
        ([1, 2], [1]), ([1, 2], [2]), ([3, 4], [3]), ([3, 4], [4]), ([5, 6], [5]), ([5, 6], [6]),
        ([1, 3], [1]), ([1, 3], [3]), ([2, 4], [2]), ([2, 4], [4]),
        ([1, 5], [1]), ([1, 5], [5]), ([2, 6], [2]), ([2, 6], [6]),
        ([3, 5], [3]), ([3, 5], [5]), ([4, 6], [4]), ([4, 6], [6]),
    ]
    return validate_linearization(nodes, arcs, g)[0]


def wide15_hypergraph() -> Hypergraph:
    center = list(range(1, 11))
    return validate_hypergraph(
        15, [center, [1, 2, 3], [4, 5, 6, 11, 12], [7, 8, 13], [9, 10, 14, 15]]
    )


def wide15_flower() -> ExtendedFlower:
    return flower(
        range(1, 11), [[1, 2, 3], [4, 5, 6, 11, 12], [7, 8, 13], [9, 10, 14, 15]]
    )


def wide15_instance() -> MultilinearInstance:
    g = wide15_hypergraph()
    return multilinear_instance(g, [(1, e) for e in g.edges])


def _instance_doc(producer: Callable[[], MultilinearInstance]) -> Callable[[], dict]:
    return lambda: instance_to_dict(producer())


def _linearization_doc(producer: Callable[[], Linearization]) -> Callable[[], dict]:
    return lambda: linearization_to_dict(producer())


BUNDLED: dict[str, tuple[str, Callable[[], dict[str, Any]]]] = {
    "demo4": ("instance", _instance_doc(demo4_instance)),
    "demo4-standard": ("linearization", lambda: linearization_to_dict(demo4_linearizations()["standard"])),
    "demo4-chain": ("linearization", lambda: linearization_to_dict(demo4_linearizations()["chain"])),
    "demo4-overlap": ("linearization", lambda: linearization_to_dict(demo4_linearizations()["overlap"])),
    "demo4-p1": ("point", lambda: point_to_dict(demo4_points()["p1"])),
    "demo4-p2": ("point", lambda: point_to_dict(demo4_points()["p2"])),
    "demo4-p3": ("point", lambda: point_to_dict(demo4_points()["p3"])),
    "star3": ("instance", _instance_doc(lambda: star_instance(3))),
    "star4": ("instance", _instance_doc(lambda: star_instance(4))),
    "star6": ("instance", _instance_doc(lambda: star_instance(6))),
    "star12": ("instance", _instance_doc(lambda: star_instance(12))),
    "split3": ("linearization", _linearization_doc(split3_linearization)),
    "split6": ("linearization", _linearization_doc(split6_linearization)),
    "wide15": ("instance", _instance_doc(wide15_instance)),
    "wide15-flower": ("flower", lambda: flower_to_dict(wide15_flower())),
}


def bundled_names() -> list[str]:
    return sorted(BUNDLED)


def bundled_doc(name: str) -> tuple[str, dict[str, Any]]:
    """Resolve a bundled fixture to its (kind, JSON document) pair."""
    try:
        kind, producer = BUNDLED[name]
    except KeyError:
        raise FormatError(
            f"unknown bundled fixture {name!r}; available: {', '.join(bundled_names())}"
        ) from None
    return kind, producer()
