import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from focalkit.errors import InputError, ParseError
from focalkit.exactalg import MPoly, render
from focalkit.families import CATALOG, fixture
from focalkit.parser import MAX_EXPONENT, parse_expr, parse_family_file, serialize_family, tokenize
from strategies import VARS, polys

X, Y, Z = MPoly.gens(*VARS)


@pytest.mark.parametrize("text,expected", [
    ("x^2 - 3/2*y + 1", X ** 2 - Fraction(3, 2) * Y + 1),
    ("(x + y)^2", X * X + 2 * X * Y + Y * Y),
    ("-x*y", -X * Y),
    ("2*(x - 1)*(x + 1)", 2 * X * X - 2),
    ("  7 ", MPoly.const(7, VARS)),
    ("x^0", MPoly.const(1, VARS)),
    ("x\n + y", X + Y),
])
def test_parse_examples(text, expected):
    assert parse_expr(text, VARS) == expected


@pytest.mark.parametrize("text,line,col", [
    ("x^", 1, 3),
    ("x +", 1, 4),
    ("(x + 1", 1, 7),
    ("x / 2", 1, 3),
    ("1/0", 1, 3),
    ("x $ y", 1, 3),
    ("x\n  + w", 2, 5),
    ("x y", 1, 3),
    ("", 1, 1),
    ("x + -y", 1, 5),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_expr(text, VARS, "expr")
    assert (err.value.line, err.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(err.value)


def test_exponent_and_degree_caps():
    with pytest.raises(ParseError, match="exceeds"):
        parse_expr(f"x^{MAX_EXPONENT + 1}", VARS)
    with pytest.raises(ParseError, match="degree"):
        parse_expr("(x^40)^2", VARS)
    with pytest.raises(ParseError, match="degree"):
        parse_expr("x^40*y^40", VARS)


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError, match="nested"):
        parse_expr("(" * 5000 + "x" + ")" * 5000, VARS)


def test_tokenize_positions():
    toks = tokenize("ab1 +\n 23")
    assert [(t.kind, t.line, t.column) for t in toks] == [
        ("ident", 1, 1), ("+", 1, 5), ("int", 2, 2), ("end", 2, 4)]


@given(polys())
def test_render_parse_round_trip(p):
    assert parse_expr(render(p), VARS) == p


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_family_round_trip(name):
    spec = fixture(name)
    text = serialize_family(spec)
    again = parse_family_file(text)
    assert again == spec
    assert serialize_family(again) == text


def test_family_file_f1():
    doc = {"N": 3, "k": 1, "params": ["t"], "points": [[1, "t", "t^2", "t^3"], [0, 1, "2*t", "3*t^2"]],
           "label": "twisted cubic tangents"}
    assert parse_family_file(json.dumps(doc)) == fixture("F1")


def _doc(**over):
    doc = {"N": 3, "k": 1, "params": ["t"], "points": [["1", "t", "t^2", "t^3"], ["0", "1", "2*t", "3*t^2"]]}
    doc.update(over)
    return json.dumps(doc)


@pytest.mark.parametrize("text,match", [
    (_doc(points=[["1", "t", "t^2"], ["0", "1", "2*t", "3*t^2"]]), "coordinates"),
    (_doc(points=[["1", "t", "t^2", "t^"], ["0", "1", "2*t", "3*t^2"]]), "exponent"),
    (_doc(points=[["1", "t", "0", "0"], ["2", "2*t", "0", "0"]]), "dependent"),
    (_doc(params=["t", "t"]), "duplicate"),
    (_doc(params=["2t"]), "parameter name"),
    (_doc(N="3"), "integer"),
    (_doc(k=3), "k < N"),
    (_doc(points=[["1", "s", "0", "0"], ["0", "0", "1", "0"]]), "unknown variable"),
    (_doc(points=[[1.5, "t", "0", "0"], ["0", "0", "1", "0"]]), "expected a string"),
    ('{"N": 3,\n  "k": 1,,}', "line 2"),
    ("[1, 2]", "JSON object"),
    (json.dumps({"k": 1}), "missing field"),
])
def test_family_file_errors(text, match):
    with pytest.raises(InputError, match=match):
        parse_family_file(text)


@given(st.text(alphabet="xyz0123456789+-*^/() \n", max_size=40))
def test_fuzz_expressions_give_structured_errors(text):
    try:
        parse_expr(text, VARS)
    except ParseError as err:
        assert err.line >= 1 and err.column >= 1


@given(st.text(max_size=60))
def test_fuzz_family_files_give_input_errors(text):
    try:
        parse_family_file(text)
    except InputError:
        pass
