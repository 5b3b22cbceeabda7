from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ordinary_conics.constructions import gen_acnodal_subgroup
from ordinary_conics.pointio import (ParseError, dumps, format_rational, loads, parse_rational,
                                     read_points, write_points)

coords = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 6)


def test_rational_format():
    assert format_rational(F(-3, 4)) == "-3/4"
    assert format_rational(5) == "5/1"
    assert parse_rational("6/8") == F(3, 4)
    assert parse_rational("-7") == -7
    for bad in ("0.5", "1/", "a/b", "1e3"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=12, unique=True),
       st.sampled_from(["json", "csv"]))
def test_round_trip(points, fmt):
    labels = [f"p{i}" for i in range(len(points))]
    back = loads(dumps(points, labels, fmt=fmt), fmt)
    assert back.points == points and back.labels == labels


def test_files_on_disk(tmp_path):
    pts = [(F(1, 3), F(-2)), (F(0), F(5, 7))]
    for name in ("a.json", "a.csv"):
        write_points(tmp_path / name, pts, metadata={"kind": "test"})
        assert read_points(tmp_path / name).points == pts


def test_parse_errors_carry_line_numbers():
    text = '{\n  "points": [\n    {"x": "1/1", "y": "2/1"},\n    {"x": "1/1", "y": "2/1"}\n  ]\n}\n'
    with pytest.raises(ParseError) as exc:
        loads(text)
    assert exc.value.line == 4 and "duplicate" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        loads('{\n  "points": [\n    {"x": "1/1", "y": "0.5"}\n  ]\n}')
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        loads('{"points": [')
    assert exc.value.line == 1
    with pytest.raises(ParseError) as exc:
        loads("x,y\n1/2,3/4\nfoo,1/1\n", "csv")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        loads("a,b\n1,2\n", "csv")


def test_numeric_round_trip():
    c = gen_acnodal_subgroup(7)
    meta = {**c.metadata(), "numeric": True}
    back = loads(dumps([(p.x, p.y) for p in c.points], None, meta))
    assert back.numeric and back.metadata["precision_bits"] == 128
    for (x, y), p in zip(back.points, c.points):
        assert abs(x - p.x) < 1e-36 and abs(y - p.y) < 1e-36
    with pytest.raises(TypeError):
        back.point_set()


def test_csv_header_and_labels():
    text = dumps([(F(1), F(2))], ["a"], fmt="csv")
    assert text == "x,y,label\n1/1,2/1,a\n"
    rng = random.Random(0)
    pts = [(F(rng.randint(-9, 9), rng.randint(1, 9)), F(k)) for k in range(6)]
    assert loads(dumps(pts, fmt="csv"), "csv").labels is None
