from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from axbc.errors import ParseError, ShapeError, UnboundParameterError
from axbc.exact import Matrix
from axbc.parametric import (ParametricMatrix, contains, dumps, format_affine, greek_names, latex_affine, loads,
                             parse_affine, parse_parametric, same_affine_set, to_latex)
from conftest import matrices

M = Matrix.from_rows


def sample():
    return ParametricMatrix(
        M([[-1, -2, 0], [-1, -2, 0]]),
        (("p1", M([[-1, -1, 1], [0, 0, 0]])), ("p2", M([[2, 2, -2], [-1, -1, 1]]))),
    )


def test_substitute():
    X = sample()
    assert X.substitute({"p1": 0, "p2": 0}) == M([[-1, -2, 0], [-1, -2, 0]])
    assert X.substitute({"p1": 1, "p2": 2}) == M([[2, 1, -3], [-3, -4, 2]])
    with pytest.raises(UnboundParameterError):
        X.substitute({"p1": 1})


def test_constant_only_ignores_values():
    X = ParametricMatrix(M([[3]]))
    assert X.substitute({"unused": 5}) == M([[3]])


def test_validation():
    with pytest.raises(ShapeError):
        ParametricMatrix(M([[1]]), (("p", M([[1, 2]])),))
    with pytest.raises(ValueError):
        ParametricMatrix(M([[1]]), (("p", M([[1]])), ("p", M([[2]]))))


@pytest.mark.parametrize(
    "const, terms, text",
    [
        (Fraction(-1), [("p1", Fraction(-1)), ("p2", Fraction(2))], "-1-p1+2*p2"),
        (Fraction(0), [("alpha", Fraction(1))], "alpha"),
        (Fraction(0), [], "0"),
        (Fraction(1, 2), [("x", Fraction(-3, 4))], "1/2-3/4*x"),
    ],
)
def test_affine_text(const, terms, text):
    assert format_affine(const, terms) == text
    c, coeffs = parse_affine(text)
    assert c == const
    assert coeffs == {n: v for n, v in terms}


@pytest.mark.parametrize("bad", ["", "-", "2*", "2**p", "1/0", "1 + 2", "p1*2"])
def test_affine_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_affine(bad)


def test_parse_accepts_juxtaposition_and_repeats():
    assert parse_affine("2p1+p1-3") == (Fraction(-3), {"p1": Fraction(3)})


def test_text_round_trip():
    X = sample()
    assert parse_parametric(str(X)) == X


def test_parse_parametric_fixed_names():
    X = parse_parametric("p2 0\n0 p1", names=["p1", "p2"])
    assert X.names == ["p1", "p2"]
    with pytest.raises(ParseError):
        parse_parametric("q", names=["p1"])


@given(matrices(min_dim=1, max_dim=3), st.data())
def test_json_round_trip(C, data):
    count = data.draw(st.integers(0, 3))
    params = tuple((f"p{i}", data.draw(matrices(rows=C.rows, cols=C.cols))) for i in range(count))
    X = ParametricMatrix(C * Fraction(1, data.draw(st.integers(1, 5))), params)
    assert loads(dumps(X)) == X


def test_json_schema():
    import json
    d = json.loads(dumps(ParametricMatrix(M([[Fraction(1, 2)]]), (("p1", M([[3]])),))))
    assert d == {"rows": 1, "cols": 1, "constant": [["1/2"]], "params": [{"name": "p1", "coeff": [["3"]]}]}


def test_json_errors():
    with pytest.raises(ParseError):
        loads("{not json")
    with pytest.raises(ParseError):
        loads('{"rows": 1, "cols": 2, "constant": [["1"]], "params": []}')


def test_latex():
    assert latex_affine(Fraction(-1), [("alpha_1", Fraction(-1)), ("alpha_2", Fraction(2))]) == \
        "-1-\\alpha_{1}+2\\alpha_{2}"
    assert latex_affine(Fraction(0), [("beta", Fraction(-1, 2))]) == "-\\frac{1}{2}\\beta"
    assert latex_affine(Fraction(0), [("p3", Fraction(1))]) == "p_{3}"
    out = to_latex(ParametricMatrix(M([[1, 0]]), (("alpha", M([[0, 1]])),)))
    assert out == "\\begin{bmatrix}\n1 & \\alpha\n\\end{bmatrix}"


def test_greek_names():
    assert greek_names([1, 2, 2]) == ["alpha", "beta_1", "beta_2", "gamma_1", "gamma_2"]
    assert greek_names([0, 2]) == ["beta_1", "beta_2"]


def test_membership_and_affine_equality():
    X = sample()
    assert contains(X, [X.substitute({"p1": 3, "p2": Fraction(-1, 2)})]) == [True]
    assert contains(X, [M([[0, 0, 0], [0, 0, 0]])]) == [False]
    # same set, different generators
    Y = ParametricMatrix(X.substitute({"p1": 1, "p2": 1}),
                         (("q1", X.coefficient("p1") + X.coefficient("p2")), ("q2", 2 * X.coefficient("p2"))))
    assert same_affine_set(X, Y)
    Z = ParametricMatrix(X.constant, (("q1", X.coefficient("p1")),))
    assert not same_affine_set(X, Z)
