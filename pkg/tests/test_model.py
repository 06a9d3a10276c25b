import itertools
import random
from fractions import Fraction

import pytest

from mlrelax.errors import (
    EdgeTooSmallError,
    EmptyEdgeError,
    InfeasibleError,
    TooLargeError,
    VarOutOfRangeError,
)
from mlrelax.model import (
    integer_optimum,
    ml_vertices,
    multilinear_instance,
    validate_hypergraph,
)


def test_validate_hypergraph_demo():
    g = validate_hypergraph(4, [[1, 2, 3], [2, 3, 4], [1, 2]])
    assert g.num_vars == 4
    assert g.edges == ((1, 2), (1, 2, 3), (2, 3, 4))


def test_validate_hypergraph_dedups_after_sorting():
    g = validate_hypergraph(2, [[1, 2], [2, 1]])
    assert g.edges == ((1, 2),)


def test_validate_hypergraph_rejects_small_edges():
    with pytest.raises(EdgeTooSmallError):
        validate_hypergraph(3, [[2]])
    with pytest.raises(EmptyEdgeError):
        validate_hypergraph(3, [[]])
    with pytest.raises(VarOutOfRangeError):
        validate_hypergraph(3, [[1, 4]])


def test_validate_hypergraph_idempotent():
    g = validate_hypergraph(4, [[2, 1], [1, 2, 3]])
    again = validate_hypergraph(g.num_vars, g.edges)
    assert again == g


def test_ml_vertices_single_edge():
    g = validate_hypergraph(2, [[1, 2]])
    vertices = ml_vertices(g)
    assert len(vertices) == 4
    for v in vertices:
        assert v[(1, 2)] == v[(1,)] * v[(2,)]
    ones = [v for v in vertices if v[(1,)] == v[(2,)] == 1]
    assert len(ones) == 1 and ones[0][(1, 2)] == 1


def test_ml_vertices_counts_and_distinctness():
    g = validate_hypergraph(4, [[1, 2, 3], [2, 3, 4], [1, 2]])
    vertices = ml_vertices(g)
    assert len(vertices) == 16
    xparts = {tuple(v[(i,)] for i in range(1, 5)) for v in vertices}
    assert len(xparts) == 16


def test_ml_vertices_edgeless():
    g = validate_hypergraph(1, [])
    assert ml_vertices(g) == [{(1,): 0}, {(1,): 1}]


def test_ml_vertices_guard():
    g = validate_hypergraph(5, [[1, 2]])
    with pytest.raises(TooLargeError):
        ml_vertices(g, guard=4)


def test_product_identity_random():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 6)
        edges = {tuple(sorted(rng.sample(range(1, n + 1), rng.randint(2, n)))) for _ in range(3)}
        g = validate_hypergraph(n, edges)
        for v in ml_vertices(g):
            for edge in g.edges:
                prod = 1
                for i in edge:
                    prod *= v[(i,)]
                assert v[edge] == prod


def test_integer_optimum_all_positive_coefs():
    g = validate_hypergraph(4, [[1, 2, 3], [2, 3, 4], [1, 2]])
    inst = multilinear_instance(g, [(1, e) for e in g.edges])
    value, argmin = integer_optimum(inst)
    assert value == 0
    assert all(argmin[(i,)] == 0 for i in range(1, 5))


def test_integer_optimum_all_negative_coefs():
    g = validate_hypergraph(4, [[1, 2, 3], [2, 3, 4], [1, 2]])
    inst = multilinear_instance(g, [(-1, e) for e in g.edges])
    value, argmin = integer_optimum(inst)
    assert value == -3
    assert all(argmin[(i,)] == 1 for i in range(1, 5))


def test_integer_optimum_single_edge_matches_enumeration():
    g = validate_hypergraph(2, [[1, 2]])
    inst = multilinear_instance(g, [(-1, (1,)), (-1, (2,)), (2, (1, 2))])
    # independent oracle: walk all four binary points by hand
    best = min(
        -x1 - x2 + 2 * (x1 * x2)
        for x1, x2 in itertools.product((0, 1), repeat=2)
    )
    value, _ = integer_optimum(inst)
    assert value == best == -1


def test_integer_optimum_tie_breaks_lexicographically():
    g = validate_hypergraph(2, [[1, 2]])
    # both (0,1) and (1,0) attain -1; lexicographically smaller x wins
    inst = multilinear_instance(g, [(-1, (1,)), (-1, (2,)), (2, (1, 2))])
    _, argmin = integer_optimum(inst)
    assert (argmin[(1,)], argmin[(2,)]) == (0, 1)


def test_integer_optimum_respects_constraints():
    g = validate_hypergraph(2, [[1, 2]])
    inst = multilinear_instance(
        g,
        [(-1, (1,)), (-1, (2,))],
        constraints=[([(1, (1,)), (1, (2,))], 1)],  # x1 + x2 <= 1
    )
    value, _ = integer_optimum(inst)
    assert value == -1


def test_integer_optimum_infeasible():
    g = validate_hypergraph(2, [[1, 2]])
    inst = multilinear_instance(g, [(1, (1, 2))], constraints=[([(1, (1,))], Fraction(-1))])
    with pytest.raises(InfeasibleError):
        integer_optimum(inst)


def test_instance_rejects_unknown_monomial():
    g = validate_hypergraph(3, [[1, 2]])
    with pytest.raises(VarOutOfRangeError):
        multilinear_instance(g, [(1, (1, 3))])
    with pytest.raises(VarOutOfRangeError):
        multilinear_instance(g, [(1, (4,))])
