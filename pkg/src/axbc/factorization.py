"""Rank normal forms ``Q A P = E_A`` and Rohde-form {1}-inverses.

Every {1}-inverse of ``A`` (any ``G`` with ``A G A = A``) can be written as

    G = P [[I_a, U], [V, W]] Q

for a rank normal form ``(Q, P, a)`` of ``A`` and arbitrary blocks ``U``
(a x (m-a)), ``V`` ((n-a) x a) and ``W`` ((n-a) x (m-a)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError
from .exact import Matrix

__all__ = [
    "RankNormalForm",
    "RohdeBlocks",
    "rank_normal_form",
    "verify_rank_normal_form",
    "rohde_one_inverse",
    "is_one_inverse",
    "rref",
    "rank",
    "inverse",
    "is_regular",
    "solve",
    "consistent_columns",
    "nullspace",
]


@dataclass(frozen=True)
class RankNormalForm:
    """Regular ``Q`` (m x m), ``P`` (n x n) and rank ``a`` with ``Q A P = E_A``."""

    Q: Matrix
    P: Matrix
    rank: int

    @property
    def m(self) -> int:
        return self.Q.rows

    @property
    def n(self) -> int:
        return self.P.rows

    @property
    def E(self) -> Matrix:
        return Matrix.rank_pattern(self.m, self.n, self.rank)


@dataclass(frozen=True)
class RohdeBlocks:
    """Free blocks ``U``, ``V``, ``W`` of a Rohde-form {1}-inverse."""

    U: Matrix
    V: Matrix
    W: Matrix

    @classmethod
    def zero(cls, a: int, m: int, n: int) -> "RohdeBlocks":
        return cls(Matrix.zeros(a, m - a), Matrix.zeros(n - a, a), Matrix.zeros(n - a, m - a))

    @classmethod
    def random(cls, rng: random.Random, a: int, m: int, n: int, lo: int = -3, hi: int = 3) -> "RohdeBlocks":
        def draw(r, c):
            return Matrix(r, c, (rng.randint(lo, hi) for _ in range(r * c)))

        return cls(draw(a, m - a), draw(n - a, a), draw(n - a, m - a))

    def check(self, a: int, m: int, n: int) -> None:
        expected = {"U": (a, m - a), "V": (n - a, a), "W": (n - a, m - a)}
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeError(f"Rohde block {name} is {got[0]}x{got[1]}, expected {shape[0]}x{shape[1]}")


# --- elimination kernels ---------------------------------------------------

def _work(M: Matrix) -> list[list[Fraction]]:
    return M.to_rows()


def rank_normal_form(A: Matrix) -> RankNormalForm:
    """Gauss-Jordan with full pivoting, tracking row and column operations.

    The pivot is the first nonzero entry of the remaining submatrix in
    row-major order, so the result is a pure function of ``A``.
    """
    m, n = A.shape
    M = _work(A)
    Q = Matrix.identity(m).to_rows()
    # P is kept transposed so column operations become row operations.
    Pt = Matrix.identity(n).to_rows()
    r = 0
    while r < min(m, n):
        pivot = next(
            ((i, j) for i in range(r, m) for j in range(r, n) if M[i][j]),
            None,
        )
        if pivot is None:
            break
        i, j = pivot
        if i != r:
            M[r], M[i] = M[i], M[r]
            Q[r], Q[i] = Q[i], Q[r]
        if j != r:
            for row in M:
                row[r], row[j] = row[j], row[r]
            Pt[r], Pt[j] = Pt[j], Pt[r]
        p = M[r][r]
        if p != 1:
            inv = 1 / p
            M[r] = [x * inv for x in M[r]]
            Q[r] = [x * inv for x in Q[r]]
        for i2 in range(m):
            f = M[i2][r]
            if i2 != r and f:
                M[i2] = [x - f * y for x, y in zip(M[i2], M[r])]
                Q[i2] = [x - f * y for x, y in zip(Q[i2], Q[r])]
        # column r is now e_r; clear the rest of row r with column operations
        for j2 in range(r + 1, n):
            f = M[r][j2]
            if f:
                M[r][j2] = Fraction(0)
                Pt[j2] = [x - f * y for x, y in zip(Pt[j2], Pt[r])]
        r += 1
    return RankNormalForm(
        Q=Matrix.from_rows(Q, m),
        P=Matrix.from_rows(Pt, n).transpose(),
        rank=r,
    )


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    R, pivots = _rref_rows(_work(M), M.cols)
    return Matrix.from_rows(R, M.cols), pivots


def _rref_rows(R: list[list[Fraction]], ncols: int, limit: int | None = None) -> tuple[list, list[int]]:
    # Pivots are only searched in the first ``limit`` columns.
    m = len(R)
    limit = ncols if limit is None else limit
    pivots = []
    r = 0
    for c in range(limit):
        if r == m:
            break
        i = next((i for i in range(r, m) if R[i][c]), None)
        if i is None:
            continue
        R[r], R[i] = R[i], R[r]
        p = R[r][c]
        if p != 1:
            R[r] = [x / p for x in R[r]]
        for i2 in range(m):
            f = R[i2][c]
            if i2 != r and f:
                R[i2] = [x - f * y for x, y in zip(R[i2], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def is_regular(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def inverse(M: Matrix) -> Matrix:
    """Inverse of a regular matrix; raises ``ValueError`` if singular."""
    n = M.rows
    if M.cols != n:
        raise ShapeError(f"cannot invert a {M.rows}x{M.cols} matrix")
    I = Matrix.identity(n).to_rows()
    aug = [row + I[i] for i, row in enumerate(_work(M))]
    R, pivots = _rref_rows(aug, 2 * n, limit=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return Matrix.from_rows([row[n:] for row in R], n)


def _augmented(M: Matrix, rhs: Matrix) -> tuple[list, list[int]]:
    if rhs.rows != M.rows:
        raise ShapeError(f"right-hand side has {rhs.rows} rows, system has {M.rows}")
    aug = [a + b for a, b in zip(_work(M), _work(rhs))] if M.rows else []
    return _rref_rows(aug, M.cols + rhs.cols, limit=M.cols)


def consistent_columns(M: Matrix, rhs: Matrix) -> list[bool]:
    """For each column ``b`` of rhs, whether ``M x = b`` has a solution."""
    R, pivots = _augmented(M, rhs)
    n, r = M.cols, len(pivots)
    return [all(not R[i][n + j] for i in range(r, M.rows)) for j in range(rhs.cols)]


def solve(M: Matrix, rhs: Matrix) -> Matrix | None:
    """A particular solution of ``M X = rhs`` (free variables zero), or None."""
    R, pivots = _augmented(M, rhs)
    n, r = M.cols, len(pivots)
    if any(R[i][n + j] for i in range(r, M.rows) for j in range(rhs.cols)):
        return None
    X = [[Fraction(0)] * rhs.cols for _ in range(n)]
    for i, c in enumerate(pivots):
        X[c] = R[i][n:]
    return Matrix.from_rows(X, rhs.cols)


def nullspace(M: Matrix) -> Matrix:
    """Columns form a basis of ``{x : M x = 0}`` (n x (n - rank))."""
    R, pivots = rref(M)
    n = M.cols
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i, f]
        basis.append(v)
    return Matrix.from_rows(basis, n).transpose() if basis else Matrix.zeros(n, 0)


# --- verification and Rohde construction -----------------------------------

def verify_rank_normal_form(A: Matrix, f: RankNormalForm) -> bool:
    """True iff ``f.Q @ A @ f.P == E_A`` and both transforms are regular."""
    m, n = A.shape
    if f.Q.shape != (m, m) or f.P.shape != (n, n):
        raise ShapeError(
            f"witness shapes Q {f.Q.rows}x{f.Q.cols}, P {f.P.rows}x{f.P.cols} "
            f"do not fit a {m}x{n} matrix"
        )
    if not 0 <= f.rank <= min(m, n):
        return False
    if f.Q @ A @ f.P != Matrix.rank_pattern(m, n, f.rank):
        return False
    return is_regular(f.Q) and is_regular(f.P)


def rohde_one_inverse(f: RankNormalForm, blocks: RohdeBlocks | None = None) -> Matrix:
    """``P [[I_a, U], [V, W]] Q``; zero blocks when ``blocks`` is None."""
    a, m, n = f.rank, f.m, f.n
    if blocks is None:
        blocks = RohdeBlocks.zero(a, m, n)
    blocks.check(a, m, n)
    middle = Matrix.block([[Matrix.identity(a), blocks.U], [blocks.V, blocks.W]])
    return f.P @ middle @ f.Q


def is_one_inverse(A: Matrix, G: Matrix) -> bool:
    if G.shape != (A.cols, A.rows):
        raise ShapeError(
            f"a {{1}}-inverse of a {A.rows}x{A.cols} matrix must be {A.cols}x{A.rows}, got {G.rows}x{G.cols}"
        )
    return A @ G @ A == A
