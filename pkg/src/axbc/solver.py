"""Direct solution of ``A X B = C`` through rank normal forms of A and B.

With ``Q A P = E_A`` (rank a) and ``R B S = E_B`` (rank b), the equation is
solvable iff ``C' = Q C S`` vanishes outside its top-left ``a x b`` block.
The general solution is then

    X = P [[C'_11, T_12], [T_21, T_22]] R

with the ``n*k - a*b`` entries of the ``T`` blocks as free parameters.
Nothing of size ``ml x nk`` is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import InvalidInverseError, InvalidWitnessError, NoSolutionError, ShapeError
from .exact import Matrix
from .factorization import RankNormalForm, is_one_inverse, rank_normal_form, verify_rank_normal_form
from .parametric import ParametricMatrix, contains, greek_names, plain_names

Naming = Literal["plain", "greek"]


@dataclass(frozen=True)
class GeneralSolution:
    """Parametric family of all solutions together with how it was obtained."""

    X: ParametricMatrix
    route: Literal["direct", "kronecker"]
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def param_count(self) -> int:
        return len(self.X.params)

    def __call__(self, **values) -> Matrix:
        return self.X.substitute(values)


def check_shapes(A: Matrix, B: Matrix, C: Matrix) -> tuple[int, int, int, int]:
    """Return ``(m, n, k, l)`` for A m x n, B k x l, C m x l."""
    m, n = A.shape
    k, l = B.shape
    if C.shape != (m, l):
        raise ShapeError(f"C must be {m}x{l} for A {m}x{n} and B {k}x{l}, got {C.rows}x{C.cols}")
    return m, n, k, l


def factor(M: Matrix, f: RankNormalForm | None, label: str = "A") -> RankNormalForm:
    """Use an injected rank normal form after validating it, or compute one."""
    if f is None:
        return rank_normal_form(M)
    if not verify_rank_normal_form(M, f):
        raise InvalidWitnessError(f"injected witnesses for {label} do not satisfy Q {label} P = E with Q, P regular")
    return f


def transform_rhs(C: Matrix, fA: RankNormalForm, fB: RankNormalForm) -> Matrix:
    """``C' = Q C S``."""
    if C.rows != fA.m or C.cols != fB.n:
        raise ShapeError(f"C is {C.rows}x{C.cols}, witnesses expect {fA.m}x{fB.n}")
    return fA.Q @ C @ fB.P


@dataclass(frozen=True)
class Offender:
    """A nonzero block that witnesses inconsistency, placed at ``offset`` in its parent."""

    block: Matrix
    offset: tuple[int, int]

    @property
    def entries(self) -> list[tuple[int, int, Fraction]]:
        oi, oj = self.offset
        return [(i + oi, j + oj, self.block[i, j]) for i, j in self.block.nonzero_positions()]

    @property
    def largest(self) -> tuple[int, int]:
        """Parent position of the entry with the largest absolute numerator."""
        i, j, _ = max(self.entries, key=lambda e: abs(e[2].numerator))
        return i, j


def certificate(Cp: Matrix, a: int, b: int) -> dict[str, Offender]:
    """Nonzero blocks among ``C'12``, ``C'21``, ``C'22``; empty means consistent."""
    _, C12, C21, C22 = Cp.split(a, b)
    offsets = {"C'12": (0, b), "C'21": (a, 0), "C'22": (a, b)}
    return {
        label: Offender(block, offsets[label])
        for label, block in zip(offsets, (C12, C21, C22))
        if not block.is_zero()
    }


def is_consistent(A: Matrix, B: Matrix, C: Matrix,
                  fA: RankNormalForm | None = None, fB: RankNormalForm | None = None) -> bool:
    """Solvability from the zero pattern of ``Q C S``."""
    check_shapes(A, B, C)
    fA, fB = factor(A, fA, "A"), factor(B, fB, "B")
    return not certificate(transform_rhs(C, fA, fB), fA.rank, fB.rank)


def penrose_condition(A: Matrix, B: Matrix, C: Matrix, GA: Matrix, GB: Matrix) -> bool:
    """``C == A GA C GB B`` for {1}-inverses GA of A and GB of B."""
    check_shapes(A, B, C)
    if not is_one_inverse(A, GA):
        raise InvalidInverseError("GA is not a {1}-inverse of A")
    if not is_one_inverse(B, GB):
        raise InvalidInverseError("GB is not a {1}-inverse of B")
    return A @ GA @ C @ GB @ B == C


def general_solution(A: Matrix, B: Matrix, C: Matrix,
                     fA: RankNormalForm | None = None, fB: RankNormalForm | None = None,
                     naming: Naming = "plain") -> GeneralSolution:
    """All solutions of ``A X B = C`` with the minimal ``nk - ab`` parameters.

    Parameters fill the top-right, bottom-left and bottom-right blocks of the
    middle factor, each in row-major order. With ``naming="greek"`` the three
    blocks are called alpha, beta and gamma.

    Raises :class:`NoSolutionError` with the offending blocks of ``Q C S``
    when the equation is inconsistent.
    """
    m, n, k, l = check_shapes(A, B, C)
    fA, fB = factor(A, fA, "A"), factor(B, fB, "B")
    a, b = fA.rank, fB.rank
    Cp = transform_rhs(C, fA, fB)
    cert = certificate(Cp, a, b)
    if cert:
        raise NoSolutionError("A X B = C has no solution: Q C S is nonzero outside its leading block", cert)
    P, R = fA.P, fB.Q

    C11 = Cp.submatrix(0, a, 0, b)
    middle = Matrix.block([[C11, Matrix.zeros(a, k - b)],
                           [Matrix.zeros(n - a, b), Matrix.zeros(n - a, k - b)]])
    constant = P @ middle @ R

    positions = ([(i, j) for i in range(a) for j in range(b, k)]
                 + [(i, j) for i in range(a, n) for j in range(b)]
                 + [(i, j) for i in range(a, n) for j in range(b, k)])
    if naming == "greek":
        groups = [a * (k - b), (n - a) * b, (n - a) * (k - b)]
        names = greek_names(groups)
    else:
        names = plain_names(len(positions))
    params = tuple(
        (name, Matrix.column(P.col(i)) @ Matrix(1, k, R.row(j)))
        for name, (i, j) in zip(names, positions)
    )
    return GeneralSolution(
        X=ParametricMatrix(constant, params),
        route="direct",
        witnesses={"A": fA, "B": fB},
    )


def penrose_solution(A: Matrix, B: Matrix, C: Matrix, GA: Matrix, GB: Matrix, Y: Matrix) -> Matrix:
    """``GA C GB + Y - GA A Y B GB`` for an arbitrary n x k matrix Y."""
    if not penrose_condition(A, B, C, GA, GB):
        raise NoSolutionError("A X B = C has no solution: C != A GA C GB B")
    if Y.shape != (A.cols, B.rows):
        raise ShapeError(f"Y must be {A.cols}x{B.rows}, got {Y.rows}x{Y.cols}")
    return GA @ C @ GB + Y - GA @ A @ Y @ B @ GB


def solve_membership(X0: Matrix, sol: GeneralSolution) -> bool:
    """Whether some parameter choice reproduces ``X0``."""
    return contains(sol.X, [X0])[0]


def substitute(X: ParametricMatrix, values) -> Matrix:
    return X.substitute(values)


def residual(A: Matrix, B: Matrix, C: Matrix, X: Matrix) -> Matrix:
    """``A X B - C``."""
    check_shapes(A, B, C)
    if X.shape != (A.cols, B.rows):
        raise ShapeError(f"X must be {A.cols}x{B.rows}, got {X.rows}x{X.cols}")
    return A @ X @ B - C
