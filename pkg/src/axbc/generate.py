"""Random exact instances for tests and benchmarks."""

from __future__ import annotations

import random

from .exact import Matrix
from .factorization import is_regular


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix(rows, cols, (rng.randint(lo, hi) for _ in range(rows * cols)))


def random_regular(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        M = random_matrix(rng, n, n, lo, hi)
        if is_regular(M):
            return M


def random_of_rank(rng: random.Random, rows: int, cols: int, rank: int, lo: int = -2, hi: int = 2) -> Matrix:
    """``L E R`` with regular random L, R and the rank-``rank`` pattern E."""
    L = random_regular(rng, rows, lo, hi)
    R = random_regular(rng, cols, lo, hi)
    return L @ Matrix.rank_pattern(rows, cols, rank) @ R


def random_consistent(rng: random.Random, max_dim: int = 5, lo: int = -3, hi: int = 3,
                      dims: tuple[int, int, int, int] | None = None) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """``(A, B, C, X0)`` with ``C = A X0 B``.

    Half of the A and B draws are rank-deficient products so that small
    ranks are well represented; every entry of A, B and X0 lies in
    ``lo..hi``.
    """
    m, n, k, l = dims or tuple(rng.randint(1, max_dim) for _ in range(4))

    def draw(r, c):
        if rng.random() < 0.5:
            return random_matrix(rng, r, c, lo, hi)
        inner = rng.randint(0, min(r, c))
        while True:
            M = random_matrix(rng, r, inner, -1, 1) @ random_matrix(rng, inner, c, -1, 1)
            if all(lo <= x <= hi for x in M.entries):
                return M

    A, B = draw(m, n), draw(k, l)
    X0 = random_matrix(rng, n, k, lo, hi)
    return A, B, A @ X0 @ B, X0
