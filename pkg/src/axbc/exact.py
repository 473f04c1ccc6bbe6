"""Exact rational matrices and the Kronecker/vec toolkit.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Matrices are immutable, row-major and 0-indexed;
0-row and 0-column matrices are legal so that block formulas degenerate
without special cases.
"""

from __future__ import annotations

import contextlib
import re
from contextvars import ContextVar
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, ShapeError

Scalar = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)

# Opt-in instrumentation for the benchmark harness: the largest matrix
# (in entries) constructed inside a ``track_peak()`` block.
_peak: ContextVar[list | None] = ContextVar("axbc_peak", default=None)


@contextlib.contextmanager
def track_peak() -> Iterator[list]:
    """Record the largest matrix size built in this context.

    Yields a one-element list whose item is updated in place.
    """
    box = [0]
    token = _peak.set(box)
    try:
        yield box
    finally:
        _peak.reset(token)


def note_entries(count: int) -> None:
    """Report an intermediate of ``count`` entries to an active tracker."""
    box = _peak.get()
    if box is not None and count > box[0]:
        box[0] = count


def to_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point entries are not supported; use int, Fraction or 'p/q'")
    return Fraction(value)


class Matrix:
    """Dense ``rows x cols`` matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        data = tuple(to_scalar(x) for x in entries)
        if len(data) != rows * cols:
            raise ShapeError(f"{len(data)} entries given for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data
        note_entries(len(data))

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        # Trusted constructor: data is already a tuple of Fractions.
        self = object.__new__(cls)
        self.rows = rows
        self.cols = cols
        self._data = data
        note_entries(len(data))
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ShapeError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        data = [_ZERO] * (n * n)
        for i in range(n):
            data[i * n + i] = _ONE
        return cls._raw(n, n, tuple(data))

    @classmethod
    def column(cls, entries: Iterable) -> "Matrix":
        data = tuple(to_scalar(x) for x in entries)
        return cls._raw(len(data), 1, data)

    @classmethod
    def rank_pattern(cls, rows: int, cols: int, rank: int) -> "Matrix":
        """The normal form ``E`` with ``I_rank`` top-left and zeros elsewhere."""
        if not 0 <= rank <= min(rows, cols):
            raise ShapeError(f"rank {rank} impossible for a {rows}x{cols} matrix")
        data = [_ZERO] * (rows * cols)
        for i in range(rank):
            data[i * cols + i] = _ONE
        return cls._raw(rows, cols, tuple(data))

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; blocks may have zero rows or columns."""
        if not grid:
            return cls.zeros(0, 0)
        heights = [row[0].rows for row in grid]
        widths = [b.cols for b in grid[0]]
        for bi, row in enumerate(grid):
            if len(row) != len(widths):
                raise ShapeError(f"block row {bi} has {len(row)} blocks, expected {len(widths)}")
            for bj, b in enumerate(row):
                if b.rows != heights[bi] or b.cols != widths[bj]:
                    raise ShapeError(
                        f"block ({bi},{bj}) is {b.rows}x{b.cols}, "
                        f"expected {heights[bi]}x{widths[bj]}"
                    )
        data = []
        for bi, row in enumerate(grid):
            for i in range(heights[bi]):
                for b in row:
                    data.extend(b._data[i * b.cols:(i + 1) * b.cols])
        return cls._raw(sum(heights), sum(widths), tuple(data))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return self._data

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i},{j}) out of range for {self.rows}x{self.cols}")
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._data[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows ``[r0, r1)`` and columns ``[c0, c1)``."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ShapeError(f"block [{r0}:{r1}, {c0}:{c1}] outside {self.rows}x{self.cols}")
        cols = self.cols
        data = []
        for i in range(r0, r1):
            data.extend(self._data[i * cols + c0:i * cols + c1])
        return Matrix._raw(r1 - r0, c1 - c0, tuple(data))

    def split(self, r: int, c: int) -> tuple["Matrix", "Matrix", "Matrix", "Matrix"]:
        """Quadrants ``(top-left, top-right, bottom-left, bottom-right)`` cut at row r, column c."""
        m, n = self.shape
        return (
            self.submatrix(0, r, 0, c),
            self.submatrix(0, r, c, n),
            self.submatrix(r, m, 0, c),
            self.submatrix(r, m, c, n),
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def transpose(self) -> "Matrix":
        m, n = self.shape
        data = self._data
        return Matrix._raw(n, m, tuple(data[i * n + j] for j in range(n) for i in range(m)))

    def _check_same_shape(self, other: "Matrix", op: str) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"cannot {op} {self.rows}x{self.cols} and {other.rows}x{other.cols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other, "add")
        return Matrix._raw(self.rows, self.cols, tuple(x + y for x, y in zip(self._data, other._data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other, "subtract")
        return Matrix._raw(self.rows, self.cols, tuple(x - y for x, y in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(-x for x in self._data))

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return NotImplemented
        s = to_scalar(scalar)
        return Matrix._raw(self.rows, self.cols, tuple(s * x for x in self._data))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, p = self.cols, other.cols
        bdata = other._data
        out = []
        for i in range(self.rows):
            nz = [(t, x) for t, x in enumerate(self._data[i * n:(i + 1) * n]) if x]
            if not nz:
                out.extend((_ZERO,) * p)
                continue
            for j in range(p):
                s = _ZERO
                for t, x in nz:
                    y = bdata[t * p + j]
                    if y:
                        s += x * y
                out.append(s)
        return Matrix._raw(self.rows, p, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def is_zero(self) -> bool:
        return not any(self._data)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        n = self.cols
        return [divmod(t, n) for t, x in enumerate(self._data) if x]

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}, [{rows}])"

    def __str__(self) -> str:
        return format_matrix(self)


def hstack(*blocks: Matrix) -> Matrix:
    return Matrix.block([list(blocks)])


def vstack(*blocks: Matrix) -> Matrix:
    return Matrix.block([[b] for b in blocks])


class PermutationMatrix:
    """Permutation matrix with a 1 at ``(i, image[i])`` for every row i.

    Left-multiplying by it picks rows: ``(P @ M).row(i) == M.row(image[i])``.
    """

    __slots__ = ("size", "image")

    def __init__(self, image: Sequence[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation of range({len(image)}): {image}")
        self.size = len(image)
        self.image = image

    @classmethod
    def identity(cls, n: int) -> "PermutationMatrix":
        return cls(range(n))

    def transpose(self) -> "PermutationMatrix":
        inv = [0] * self.size
        for i, j in enumerate(self.image):
            inv[j] = i
        return PermutationMatrix(inv)

    T = property(transpose)
    inverse = transpose

    def to_matrix(self) -> Matrix:
        n = self.size
        data = [_ZERO] * (n * n)
        for i, j in enumerate(self.image):
            data[i * n + j] = _ONE
        return Matrix._raw(n, n, tuple(data))

    def permute_rows(self, M: Matrix) -> Matrix:
        """``self @ M`` without materializing the permutation."""
        if M.rows != self.size:
            raise ShapeError(f"cannot permute {M.rows} rows with a size-{self.size} permutation")
        data = []
        for j in self.image:
            data.extend(M.row(j))
        return Matrix._raw(M.rows, M.cols, tuple(data))

    def permute_cols(self, M: Matrix) -> Matrix:
        """``M @ self`` without materializing the permutation."""
        if M.cols != self.size:
            raise ShapeError(f"cannot permute {M.cols} columns with a size-{self.size} permutation")
        # (M @ P)[:, c] = M[:, r] where image[r] = c
        src = self.transpose().image
        n = M.cols
        data = M.entries
        return Matrix._raw(M.rows, n, tuple(data[i * n + src[c]] for i in range(M.rows) for c in range(n)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationMatrix):
            return NotImplemented
        return self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"PermutationMatrix({list(self.image)})"


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product: block ``(i, j)`` of the result is ``A[i, j] * B``."""
    m, n = A.shape
    k, l = B.shape
    a, b = A.entries, B.entries
    data = []
    for i in range(m):
        arow = a[i * n:(i + 1) * n]
        for r in range(k):
            brow = b[r * l:(r + 1) * l]
            for x in arow:
                if x:
                    data.extend(x * y for y in brow)
                else:
                    data.extend((_ZERO,) * l)
    return Matrix._raw(m * k, n * l, tuple(data))


def vec(X: Matrix) -> Matrix:
    """Stack the columns of X into one column."""
    return Matrix._raw(X.rows * X.cols, 1, X.transpose().entries)


def unvec(v: Matrix, n: int, k: int) -> Matrix:
    """Inverse of :func:`vec`: rebuild an ``n x k`` matrix from its stacked columns."""
    if v.cols != 1 or v.rows != n * k:
        raise ShapeError(f"cannot unvec a {v.rows}x{v.cols} matrix into {n}x{k}")
    return Matrix._raw(k, n, v.entries).transpose()


# --- text format -----------------------------------------------------------

_NUMBER = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_scalar(token: str, line: int | None = None, column: int | None = None) -> Fraction:
    if not _NUMBER.match(token):
        raise ParseError(f"not an integer or p/q rational: {token!r}", line, column)
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ParseError(f"zero denominator in {token!r}", line, column)
    return Fraction(token)


def _tokens(line: str) -> Iterator[tuple[int, str]]:
    for match in re.finditer(r"\S+", line):
        yield match.start() + 1, match.group()


def parse_matrix(text: str, first_line: int = 1) -> Matrix:
    """Parse the line-oriented matrix format.

    One row per non-blank line, whitespace-separated integers or ``p/q``
    rationals, ``#`` to end of line is a comment. A text without rows parses
    as the 0x0 matrix.
    """
    rows: list[list[Fraction]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.split("#", 1)[0]
        toks = list(_tokens(line))
        if not toks:
            continue
        row = [parse_scalar(tok, lineno, col) for col, tok in toks]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", lineno, 1)
        rows.append(row)
    return Matrix.from_rows(rows, width or 0)


def format_scalar(x: Fraction) -> str:
    return str(x)


def format_matrix(M: Matrix) -> str:
    """Emit ``M`` in the text format (no trailing newline)."""
    return "\n".join(" ".join(format_scalar(x) for x in M.row(i)) for i in range(M.rows))
