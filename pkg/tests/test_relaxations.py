import itertools
import random
from fractions import Fraction

import pytest

from mlrelax.errors import (
    CenterTooLargeError,
    InvalidPointError,
    MalformedFlowerError,
    MissingCoordinateError,
)
from mlrelax.fixtures import demo4_hypergraph, demo4_points, star_hypergraph
from mlrelax.model import iter_ml_vertices, validate_hypergraph
from mlrelax.polyhedra import is_member, lin_ineq, poly_equal
from mlrelax.relaxations import (
    EXTENDED,
    FLOWER,
    ExtendedFlower,
    enumerate_flowers,
    flower,
    flower_ineq,
    flower_kind,
    flower_relaxation,
    is_nonredundant,
    minimalize_flower,
    separate_flower,
    standard_relaxation,
)
from mlrelax.verify import random_hypergraph


def test_standard_relaxation_single_edge_rows():
    g = validate_hypergraph(2, [[1, 2]])
    sys = standard_relaxation(g)
    assert set(sys.ineqs) == {
        lin_ineq({(1,): 1, (1, 2): -1}, 0),
        lin_ineq({(2,): 1, (1, 2): -1}, 0),
        lin_ineq({(1, 2): 1, (1,): -1, (2,): -1}, -1),
    }


def test_standard_relaxation_row_counts():
    g = demo4_hypergraph()
    sys = standard_relaxation(g)
    short = [q for q in sys.ineqs if len(q.terms) == 2]
    long = [q for q in sys.ineqs if len(q.terms) > 2]
    assert len(short) == 8  # sum of edge sizes
    assert len(long) == 3  # one per edge


def test_standard_relaxation_edgeless():
    g = validate_hypergraph(3, [])
    assert standard_relaxation(g).ineqs == ()


def test_flower_ineq_all_singletons_is_long_row():
    f = flower([1, 2], [[1], [2]])
    assert flower_ineq(f) == lin_ineq({(1, 2): 1, (1,): -1, (2,): -1}, -1)


def test_flower_ineq_demo_row_valid_at_all_vertices():
    g = demo4_hypergraph()
    f = flower([1, 2, 3], [[2, 3, 4], [1]])
    row = flower_ineq(f)
    assert row == lin_ineq({(1, 2, 3): 1, (2, 3, 4): -1, (1,): -1}, -1)
    for vertex in iter_ml_vertices(g):
        assert row.evaluate(vertex) >= row.rhs


def test_flower_ineq_rejects_uncovered_center():
    with pytest.raises(MalformedFlowerError):
        flower_ineq(flower([1, 2, 3], [[1, 2]]))
    with pytest.raises(MalformedFlowerError):
        flower_ineq(flower([1, 2], [[1, 2]]))  # self neighbor
    with pytest.raises(MalformedFlowerError):
        flower_ineq(flower([1, 2], [[3], [1], [2]]))  # disjoint neighbor


def test_flower_kind():
    assert flower_kind(flower([1, 2, 3], [[1], [2, 3, 4]])) == FLOWER
    assert flower_kind(flower([1, 2, 3], [[1, 2], [2, 3, 4]])) == EXTENDED


def test_is_nonredundant_star_family():
    g = star_hypergraph(3)
    e1, e2, e3 = g.edges
    assert is_nonredundant(g, flower(e1, [e2, [3]]))
    assert not is_nonredundant(g, flower(e1, [e2, e3, [3]]))
    assert is_nonredundant(g, flower(e1, [[1], [2], [3]]))
    # single-neighbor flowers are always non-redundant
    g2 = validate_hypergraph(3, [[1, 2], [1, 2, 3]])
    assert is_nonredundant(g2, flower([1, 2], [[1, 2, 3]]))


def test_minimalize_flower_drops_cover_slack():
    g = star_hypergraph(3)
    e1, e2, e3 = g.edges
    reduced = minimalize_flower(flower(e1, [e2, e3, [3]]))
    assert len(reduced.neighbors) == 2
    assert is_nonredundant(g, reduced)


def _brute_force_flowers(g, center):
    """Independent oracle: scan all neighbor subsets directly."""
    keys = [k for k in g.all_keys() if k != center and set(k) & set(center)]
    found = set()
    for r in range(1, len(keys) + 1):
        for combo in itertools.combinations(keys, r):
            covered = set().union(*(set(k) for k in combo))
            if not covered >= set(center):
                continue
            exclusive = True
            for i, nb in enumerate(combo):
                others = set().union(
                    *(set(o) for j, o in enumerate(combo) if j != i), set()
                )
                if not (set(center) & set(nb)) - others:
                    exclusive = False
                    break
            if exclusive:
                found.add(frozenset(combo))
    return found


def test_enumerate_flowers_against_brute_force():
    rng = random.Random(31)
    for _ in range(10):
        g = random_hypergraph(rng, 5, 3)
        got = enumerate_flowers(g)
        by_center = {}
        for f, _ in got:
            by_center.setdefault(f.center, set()).add(frozenset(f.neighbors))
        for center in g.edges:
            assert by_center.get(center, set()) == _brute_force_flowers(g, center)


def test_enumerate_flowers_star_counts():
    found = enumerate_flowers(star_hypergraph(3))
    with_edge = [f for f, _ in found if any(len(nb) > 1 for nb in f.neighbors)]
    singleton_only = [f for f, _ in found if all(len(nb) == 1 for nb in f.neighbors)]
    assert len(with_edge) == 6  # k(k-1) for k = 3
    assert len(singleton_only) == 3  # one long standard row per edge


def test_enumerate_flowers_single_edge():
    found = enumerate_flowers(validate_hypergraph(2, [[1, 2]]))
    assert len(found) == 1
    f, kind = found[0]
    assert f == ExtendedFlower((1, 2), ((1,), (2,))) and kind == FLOWER


def test_enumerate_flowers_respects_cap():
    for f, _ in enumerate_flowers(star_hypergraph(3), max_neighbors=2):
        assert len(f.neighbors) <= 2


def test_flower_relaxation_single_edge_equals_standard():
    g = validate_hypergraph(2, [[1, 2]])
    assert poly_equal(flower_relaxation(g), standard_relaxation(g))
    # the lone flower duplicates the long row, so even the row sets agree
    assert set(flower_relaxation(g).ineqs) == set(standard_relaxation(g).ineqs)


def test_flower_relaxation_cuts_demo_point():
    g = demo4_hypergraph()
    ok, _ = is_member(flower_relaxation(g), demo4_points()["p1"])
    assert not ok
    ok, _ = is_member(standard_relaxation(g), demo4_points()["p1"])
    assert ok


def test_flower_relaxation_edgeless():
    g = validate_hypergraph(2, [])
    assert flower_relaxation(g).ineqs == ()


def test_flower_validity_random():
    rng = random.Random(37)
    for _ in range(20):
        g = random_hypergraph(rng, 6, 4)
        rows = [flower_ineq(f) for f, _ in enumerate_flowers(g)]
        for vertex in iter_ml_vertices(g):
            for row in rows:
                assert row.evaluate(vertex) >= row.rhs


def test_separate_flower_fixture_example():
    g = validate_hypergraph(3, [[1, 2], [1, 2, 3]])
    point = {(1,): 1, (2,): 1, (3,): 1, (1, 2): 1, (1, 2, 3): 0}
    violation = separate_flower(g, point)
    assert violation is not None
    assert violation.flower == ExtendedFlower((1, 2, 3), ((1, 2), (3,)))
    assert violation.amount == 1


def test_separate_flower_none_at_vertices():
    rng = random.Random(41)
    for _ in range(10):
        g = random_hypergraph(rng, 5, 3)
        for vertex in iter_ml_vertices(g):
            assert separate_flower(g, vertex) is None


def test_separate_flower_short_row_detection():
    # a point violating only a short standard row must still be separated
    g = validate_hypergraph(3, [[1, 2], [1, 2, 3]])
    point = {(1,): 0, (2,): 1, (3,): 1, (1, 2): 1, (1, 2, 3): 0}
    violation = separate_flower(g, point)
    assert violation is not None
    assert violation.flower.center == (1,)
    assert violation.flower.neighbors == ((1, 2),)
    assert violation.amount == 1


@pytest.mark.parametrize("cap", [None, 1, 2, 3])
def test_separate_flower_matches_membership(cap):
    rng = random.Random(43)
    g = demo4_hypergraph()
    relaxation = flower_relaxation(g, cap)
    for _ in range(120):
        point = {k: Fraction(rng.randint(0, 4), 4) for k in g.all_keys()}
        member, _ = is_member(relaxation, point)
        assert member == (separate_flower(g, point, cap) is None)


def test_separate_flower_returned_flower_is_nonredundant():
    rng = random.Random(47)
    g = demo4_hypergraph()
    for _ in range(60):
        point = {k: Fraction(rng.randint(0, 3), 3) for k in g.all_keys()}
        violation = separate_flower(g, point)
        if violation is not None and len(violation.flower.center) > 1:
            assert is_nonredundant(g, violation.flower)
            row = flower_ineq(violation.flower)
            assert row.rhs - row.evaluate(point) == violation.amount


def test_separate_flower_input_checks():
    g = validate_hypergraph(2, [[1, 2]])
    with pytest.raises(MissingCoordinateError):
        separate_flower(g, {(1,): 1, (2,): 1})
    with pytest.raises(InvalidPointError):
        separate_flower(g, {(1,): 2, (2,): 1, (1, 2): 1})
    with pytest.raises(CenterTooLargeError):
        big = validate_hypergraph(6, [[1, 2, 3, 4, 5, 6]])
        point = {k: Fraction(1) for k in big.all_keys()}
        separate_flower(big, point, guard=5)
