"""Brute-force references that share no code with the package's elimination.

Everything here works on plain lists of Fractions.
"""

from fractions import Fraction
from itertools import combinations, permutations


def rows_of(M):
    return [[Fraction(x) for x in M.row(i)] for i in range(M.rows)]


def det_leibniz(a):
    n = len(a)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= a[i][perm[i]]
            if not term:
                break
        total += term
    return total


def rank_by_minors(M):
    """Size of the largest square submatrix with nonzero determinant."""
    a = rows_of(M)
    for r in range(min(M.rows, M.cols), 0, -1):
        for rs in combinations(range(M.rows), r):
            for cs in combinations(range(M.cols), r):
                if det_leibniz([[a[i][j] for j in cs] for i in rs]):
                    return r
    return 0


def _echelon(a, ncols):
    """Row echelon form by forward elimination only (no normalization)."""
    a = [row[:] for row in a]
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                best = i
                break
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                for j in range(c, len(a[i])):
                    a[i][j] -= f * a[r][j]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_by_elimination(M):
    return len(_echelon(rows_of(M), M.cols)[1])


def affine_solution_set(K, c):
    """Solutions of ``K x = c`` as ``(particular, basis)`` or None when inconsistent.

    ``c`` is a list; vectors are lists of Fractions.
    """
    n = K.cols
    aug = [row + [Fraction(v)] for row, v in zip(rows_of(K), c)]
    ech, pivots = _echelon(aug, n)
    r = len(pivots)
    if any(ech[i][n] != 0 for i in range(r, len(ech))):
        return None

    def back(rhs_col, fixed):
        x = [Fraction(0)] * n
        for f, v in fixed.items():
            x[f] = v
        for i in range(r - 1, -1, -1):
            c0 = pivots[i]
            s = rhs_col[i] - sum(ech[i][j] * x[j] for j in range(c0 + 1, n))
            x[c0] = s / ech[i][c0]
        return x

    free = [j for j in range(n) if j not in pivots]
    particular = back([row[n] for row in ech], {})
    basis = [back([Fraction(0)] * len(ech), {f: Fraction(1)}) for f in free]
    return particular, basis


def in_span(point, base, directions):
    """Whether ``point - base`` is a combination of ``directions``."""
    n = len(base)
    if not directions:
        return all(p == b for p, b in zip(point, base))
    # columns = directions
    a = [[Fraction(d[i]) for d in directions] + [Fraction(point[i]) - Fraction(base[i])] for i in range(n)]
    ech, pivots = _echelon(a, len(directions))
    return all(ech[i][-1] == 0 for i in range(len(pivots), n))


def list_rank(vectors, length):
    if not vectors:
        return 0
    a = [[Fraction(v[i]) for v in vectors] for i in range(length)]
    return len(_echelon(a, len(vectors))[1])
