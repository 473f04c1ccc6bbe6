"""Matrices whose entries are affine in named free parameters.

An entry ``(i, j)`` of a :class:`ParametricMatrix` stands for
``constant[i, j] + sum_p coeff_p[i, j] * p``. Three serializations are
provided: a text form reusing the matrix format with affine tokens such as
``-1-p1+2*p2``, a lossless JSON form, and a LaTeX ``bmatrix``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError, ShapeError, UnboundParameterError
from .exact import Matrix, to_scalar, vec
from .factorization import consistent_columns, rank

_GREEK = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta")


@dataclass(frozen=True)
class ParametricMatrix:
    constant: Matrix
    params: tuple[tuple[str, Matrix], ...] = ()

    def __post_init__(self):
        params = tuple((str(name), M) for name, M in self.params)
        object.__setattr__(self, "params", params)
        names = [name for name, _ in params]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for name, M in params:
            if M.shape != self.constant.shape:
                raise ShapeError(
                    f"coefficient of {name} is {M.rows}x{M.cols}, expected "
                    f"{self.constant.rows}x{self.constant.cols}"
                )

    @property
    def rows(self) -> int:
        return self.constant.rows

    @property
    def cols(self) -> int:
        return self.constant.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.constant.shape

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.params]

    def coefficient(self, name: str) -> Matrix:
        for n, M in self.params:
            if n == name:
                return M
        raise UnboundParameterError(f"no parameter named {name!r}")

    def substitute(self, values: Mapping[str, object]) -> Matrix:
        missing = [n for n in self.names if n not in values]
        if missing:
            raise UnboundParameterError(f"no value for parameter(s) {', '.join(missing)}")
        out = self.constant
        for name, M in self.params:
            v = to_scalar(values[name])
            if v:
                out = out + v * M
        return out

    def renamed(self, names: Sequence[str]) -> "ParametricMatrix":
        if len(names) != len(self.params):
            raise ValueError(f"{len(names)} names given for {len(self.params)} parameters")
        return ParametricMatrix(self.constant, tuple(zip(names, (M for _, M in self.params))))

    def map(self, left: Matrix | None = None, right: Matrix | None = None) -> "ParametricMatrix":
        """``left @ X @ right`` applied to the constant and every coefficient."""
        def f(M):
            if left is not None:
                M = left @ M
            if right is not None:
                M = M @ right
            return M

        return ParametricMatrix(f(self.constant), tuple((n, f(M)) for n, M in self.params))

    def generator_matrix(self) -> Matrix:
        """Columns are the vec'd coefficient matrices, in parameter order."""
        cols = [vec(M).entries for _, M in self.params]
        return Matrix.from_rows(cols, self.rows * self.cols).transpose() if cols else Matrix.zeros(self.rows * self.cols, 0)

    def dimension(self) -> int:
        """Dimension of the affine set swept out by the parameters."""
        return rank(self.generator_matrix())

    def entry(self, i: int, j: int) -> tuple[Fraction, list[tuple[str, Fraction]]]:
        return self.constant[i, j], [(n, M[i, j]) for n, M in self.params if M[i, j]]

    def __str__(self) -> str:
        return format_parametric(self)


def constant_solution(M: Matrix) -> ParametricMatrix:
    return ParametricMatrix(M, ())


def contains(X: ParametricMatrix, points: Sequence[Matrix]) -> list[bool]:
    """For each point, whether some parameter choice makes ``X`` equal to it."""
    for P in points:
        if P.shape != X.shape:
            raise ShapeError(f"point is {P.rows}x{P.cols}, parametric matrix is {X.rows}x{X.cols}")
    if not points:
        return []
    rhs = Matrix.from_rows([vec(P - X.constant).entries for P in points], X.rows * X.cols).transpose()
    return consistent_columns(X.generator_matrix(), rhs)


def is_subset(inner: ParametricMatrix, outer: ParametricMatrix) -> bool:
    """Affine set of ``inner`` contained in that of ``outer``.

    Checks the base point and base point plus each direction.
    """
    points = [inner.constant] + [inner.constant + M for _, M in inner.params]
    return all(contains(outer, points))


def same_affine_set(X: ParametricMatrix, Y: ParametricMatrix) -> bool:
    return X.dimension() == Y.dimension() and is_subset(X, Y) and is_subset(Y, X)


def greek_names(groups: Sequence[int]) -> list[str]:
    """Names per block group: alpha, beta, ... with ``_i`` suffixes when a group has several.

    An empty group still consumes its letter.
    """
    if len(groups) > len(_GREEK):
        raise ValueError(f"at most {len(_GREEK)} parameter groups supported")
    names = []
    for letter, size in zip(_GREEK, groups):
        if size == 0:
            continue
        if size == 1:
            names.append(letter)
        else:
            names.extend(f"{letter}_{i}" for i in range(1, size + 1))
    return names


def plain_names(count: int) -> list[str]:
    return [f"p{i}" for i in range(1, count + 1)]


# --- text ------------------------------------------------------------------

def format_affine(constant: Fraction, terms: Sequence[tuple[str, Fraction]]) -> str:
    """``-1-p1+2*p2`` style, no spaces, so it is one token in the matrix format."""
    parts = []
    if constant or not terms:
        parts.append(str(constant))
    for name, c in terms:
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign}{name}" if mag == 1 else f"{sign}{mag}*{name}")
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


_TERM = re.compile(r"([+-])?(?:(\d+(?:/\d+)?)(\*)?)?([A-Za-z_]\w*)?")


def parse_affine(token: str, line: int | None = None, column: int | None = None) -> tuple[Fraction, dict[str, Fraction]]:
    """Inverse of :func:`format_affine`; also accepts ``2p1`` and repeated names."""
    pos = 0
    constant = Fraction(0)
    coeffs: dict[str, Fraction] = {}
    while pos < len(token):
        m = _TERM.match(token, pos)
        sign, num, star, name = m.groups()
        if m.end() == pos or (num is None and name is None) or (star and name is None):
            raise ParseError(f"malformed affine expression {token!r}", line, None if column is None else column + pos)
        if pos > 0 and sign is None:
            raise ParseError(f"missing sign between terms in {token!r}", line, None if column is None else column + pos)
        if num is not None and "/" in num and int(num.split("/")[1]) == 0:
            raise ParseError(f"zero denominator in {token!r}", line, column)
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if name is None:
            constant += value
        else:
            coeffs[name] = coeffs.get(name, Fraction(0)) + value
        pos = m.end()
    if not token:
        raise ParseError("empty affine expression", line, column)
    return constant, coeffs


def format_parametric(X: ParametricMatrix) -> str:
    lines = []
    for i in range(X.rows):
        lines.append(" ".join(format_affine(*X.entry(i, j)) for j in range(X.cols)))
    return "\n".join(lines)


def parse_parametric(text: str, names: Sequence[str] | None = None) -> ParametricMatrix:
    """Parse a whitespace-separated grid of affine tokens.

    Parameter order is first appearance in row-major order unless ``names``
    fixes it (names not appearing get zero coefficients).
    """
    grid: list[list[tuple[Fraction, dict]]] = []
    width = None
    order: list[str] = list(names or [])
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(mt.start() + 1, mt.group()) for mt in re.finditer(r"\S+", line)]
        if not toks:
            continue
        row = [parse_affine(tok, lineno, col) for col, tok in toks]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", lineno, 1)
        for _, cf in row:
            for name in cf:
                if name not in order:
                    if names is not None:
                        raise ParseError(f"unknown parameter {name!r}", lineno)
                    order.append(name)
        grid.append(row)
    width = width or 0
    rows = len(grid)
    constant = Matrix.from_rows([[c for c, _ in row] for row in grid], width)
    params = []
    for name in order:
        params.append((name, Matrix.from_rows([[cf.get(name, 0) for _, cf in row] for row in grid], width)))
    if rows == 0:
        constant = Matrix.zeros(0, 0)
    return ParametricMatrix(constant, tuple(params))


# --- JSON ------------------------------------------------------------------

def _rows_json(M: Matrix) -> list[list[str]]:
    return [[str(x) for x in M.row(i)] for i in range(M.rows)]


def to_json_dict(X: ParametricMatrix) -> dict:
    return {
        "rows": X.rows,
        "cols": X.cols,
        "constant": _rows_json(X.constant),
        "params": [{"name": n, "coeff": _rows_json(M)} for n, M in X.params],
    }


def dumps(X: ParametricMatrix, **extra) -> str:
    data = to_json_dict(X)
    data.update(extra)
    return json.dumps(data, indent=2)


def _matrix_json(rows: int, cols: int, data, what: str) -> Matrix:
    if not isinstance(data, list) or len(data) != rows or any(
        not isinstance(r, list) or len(r) != cols for r in data
    ):
        raise ParseError(f"{what} is not a {rows}x{cols} array")
    try:
        return Matrix(rows, cols, (to_scalar(x) for r in data for x in r))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad entry in {what}: {exc}") from None


def from_json_dict(data: dict) -> ParametricMatrix:
    try:
        rows, cols = int(data["rows"]), int(data["cols"])
        constant = _matrix_json(rows, cols, data["constant"], "constant")
        params = tuple(
            (p["name"], _matrix_json(rows, cols, p["coeff"], f"coefficient of {p['name']}"))
            for p in data.get("params", [])
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"invalid parametric matrix JSON: {exc}") from None
    return ParametricMatrix(constant, params)


def loads(text: str) -> ParametricMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_json_dict(data)


# --- LaTeX -----------------------------------------------------------------

def latex_name(name: str) -> str:
    base, _, sub = name.partition("_")
    head = f"\\{base}" if base in _GREEK else base
    if not sub:
        m = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
        if m:
            head, sub = m.group(1), m.group(2)
    return f"{head}_{{{sub}}}" if sub else head


def latex_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def latex_affine(constant: Fraction, terms: Sequence[tuple[str, Fraction]]) -> str:
    parts = []
    if constant or not terms:
        parts.append(latex_scalar(constant))
    for name, c in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coeff = "" if mag == 1 else latex_scalar(mag)
        parts.append(f"{sign}{coeff}{latex_name(name)}")
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def to_latex(X: ParametricMatrix) -> str:
    body = " \\\\\n".join(
        " & ".join(latex_affine(*X.entry(i, j)) for j in range(X.cols)) for i in range(X.rows)
    )
    return "\\begin{bmatrix}\n" + body + "\n\\end{bmatrix}"
