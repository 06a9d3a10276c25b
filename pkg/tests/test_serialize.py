from fractions import Fraction

import pytest

from mlrelax.errors import FormatError
from mlrelax.fixtures import (
    demo4_instance,
    demo4_linearizations,
    demo4_points,
    star_instance,
    wide15_flower,
)
from mlrelax.serialize import (
    flower_from_dict,
    flower_to_dict,
    instance_from_dict,
    instance_to_dict,
    linearization_from_dict,
    linearization_to_dict,
    parse_rational,
    point_from_dict,
    point_to_dict,
    rational_str,
)


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-1") == -1
    for bad in ("x", "1/0", 1.5, True, None):
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_rational_str_round_trip():
    for value in (Fraction(3, 2), Fraction(-1), Fraction(0), Fraction(7, 3)):
        assert parse_rational(rational_str(value)) == value


def test_instance_round_trip():
    for inst in (demo4_instance(), star_instance(4)):
        doc = instance_to_dict(inst)
        again = instance_from_dict(doc)
        assert again == inst
        assert instance_to_dict(again) == doc


def test_instance_rejects_repeated_monomial_variable():
    with pytest.raises(FormatError):
        instance_from_dict(
            {"format": 1, "num_vars": 2, "objective": [{"coef": 1, "vars": [1, 1]}]}
        )


def test_instance_rejects_bad_shapes():
    with pytest.raises(FormatError):
        instance_from_dict({"format": 2, "num_vars": 2, "objective": []})
    with pytest.raises(FormatError):
        instance_from_dict({"num_vars": 0, "objective": []})
    with pytest.raises(FormatError):
        instance_from_dict({"num_vars": 2, "objective": [{"coef": 1}]})
    with pytest.raises(FormatError):
        instance_from_dict(
            {"num_vars": 2, "objective": [], "constraints": [{"terms": [], "rhs": 0, "sense": ">="}]}
        )


def test_linearization_round_trip():
    for lin in demo4_linearizations().values():
        doc = linearization_to_dict(lin)
        again, _ = linearization_from_dict(doc)
        assert again == lin
        assert linearization_to_dict(again) == doc


def test_linearization_bad_arc_indices():
    with pytest.raises(FormatError):
        linearization_from_dict({"nodes": [[1, 2]], "arcs": [[0, 5]]})
    with pytest.raises(FormatError):
        linearization_from_dict({"nodes": [[1, 2]], "arcs": [[0]]})


def test_point_round_trip():
    for point in demo4_points().values():
        doc = point_to_dict(point)
        assert point_from_dict(doc) == point


def test_point_duplicate_entry():
    with pytest.raises(FormatError):
        point_from_dict(
            {
                "entries": [
                    {"vars": [1], "value": "1"},
                    {"vars": [1], "value": "0"},
                ]
            }
        )


def test_flower_round_trip():
    f = wide15_flower()
    assert flower_from_dict(flower_to_dict(f)) == f
