"""Solving ``A X B = C`` as the linear system ``(B^T kron A) vec X = vec C``.

From ``Q A P = E_A`` and ``R B S = E_B`` the mixed product rule gives

    (S^T kron Q) (B^T kron A) (R^T kron P) = E_{B^T} kron E_A,

which becomes the rank normal form ``E_{B^T kron A}`` after a row
permutation D and a column permutation G. This module builds D and G by
index arithmetic and then works with the explicit ``ml x ml`` and
``nk x nk`` transforms; it is the independent cross-check of
:mod:`axbc.solver` and the materialized side of the benchmark.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInverseError, NoSolutionError, ShapeError
from .exact import Matrix, PermutationMatrix, kron, unvec, vec
from .factorization import RankNormalForm, RohdeBlocks, is_one_inverse, rohde_one_inverse
from .parametric import ParametricMatrix, greek_names, plain_names
from .solver import GeneralSolution, Naming, Offender, check_shapes, factor


def build_permutations(fA: RankNormalForm, fB: RankNormalForm,
                       m: int, n: int, k: int, l: int) -> tuple[PermutationMatrix, PermutationMatrix]:
    """Row permutation D and column permutation G with ``D (E_{B^T} kron E_A) G = E_{B^T kron A}``.

    The unit rows ``j*m + i`` (and columns ``j*n + i``), ``j < b``, ``i < a``,
    are moved to the front; everything keeps its relative order.
    """
    a, b = fA.rank, fB.rank
    if (fA.m, fA.n, fB.m, fB.n) != (m, n, k, l):
        raise ShapeError("factorizations do not match the stated dimensions")

    def order(stride: int, total: int) -> list[int]:
        lead = [j * stride + i for j in range(b) for i in range(a)]
        chosen = set(lead)
        return lead + [t for t in range(total) if t not in chosen]

    D = PermutationMatrix(order(m, m * l))
    G = PermutationMatrix(order(n, n * k)).transpose()
    return D, G


@dataclass(frozen=True)
class KronFactorization:
    A: Matrix
    B: Matrix
    fA: RankNormalForm
    fB: RankNormalForm
    D: PermutationMatrix
    G: PermutationMatrix

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.A.rows, self.A.cols, self.B.rows, self.B.cols)

    @property
    def rank(self) -> int:
        return self.fA.rank * self.fB.rank

    def system_matrix(self) -> Matrix:
        return kron(self.B.T, self.A)

    def left(self) -> Matrix:
        """``D (S^T kron Q)``, ml x ml."""
        return self.D.permute_rows(kron(self.fB.P.T, self.fA.Q))

    def right(self) -> Matrix:
        """``(R^T kron P) G``, nk x nk."""
        return self.G.permute_cols(kron(self.fB.Q.T, self.fA.P))

    def as_rank_normal_form(self) -> RankNormalForm:
        return RankNormalForm(Q=self.left(), P=self.right(), rank=self.rank)


def kron_factorization(A: Matrix, B: Matrix,
                       fA: RankNormalForm | None = None, fB: RankNormalForm | None = None) -> KronFactorization:
    fA, fB = factor(A, fA, "A"), factor(B, fB, "B")
    m, n = A.shape
    k, l = B.shape
    D, G = build_permutations(fA, fB, m, n, k, l)
    return KronFactorization(A, B, fA, fB, D, G)


def verify_kron_factorization(kf: KronFactorization) -> bool:
    """Check both normalization identities, materializing every matrix."""
    m, n, k, l = kf.dims
    E = Matrix.rank_pattern(m * l, n * k, kf.rank)
    EE = kron(kf.fB.E.T, kf.fA.E)
    if kf.D.to_matrix() @ EE @ kf.G.to_matrix() != E:
        return False
    return kf.left() @ kf.system_matrix() @ kf.right() == E


def kron_one_inverse(kf: KronFactorization, blocks: RohdeBlocks | None = None) -> Matrix:
    """``(R^T kron P) G [[I_ab, F], [H, L]] D (S^T kron Q)`` with ``blocks = (F, H, L)``."""
    return rohde_one_inverse(kf.as_rank_normal_form(), blocks)


def transformed_rhs(kf: KronFactorization, C: Matrix) -> Matrix:
    """``c'' = D (S^T kron Q) vec C``."""
    check_shapes(kf.A, kf.B, C)
    return kf.left() @ vec(C)


def tail_certificate(c2: Matrix, ab: int) -> dict:
    """The last ``ml - ab`` entries of ``c''`` if any is nonzero."""
    tail = c2.submatrix(ab, c2.rows, 0, 1)
    return {} if tail.is_zero() else {"c''tail": Offender(tail, (ab, 0))}


def vec_consistency(kf: KronFactorization, C: Matrix) -> bool:
    """True iff the last ``ml - ab`` entries of ``c''`` vanish."""
    return not tail_certificate(transformed_rhs(kf, C), kf.rank)


@dataclass(frozen=True)
class VecSolution:
    c2: Matrix
    head: Matrix
    X_vec: ParametricMatrix
    shape: tuple[int, int]

    @property
    def X(self) -> ParametricMatrix:
        n, k = self.shape
        return ParametricMatrix(
            unvec(self.X_vec.constant, n, k),
            tuple((name, unvec(M, n, k)) for name, M in self.X_vec.params),
        )


def vec_solution(kf: KronFactorization, C: Matrix, naming: Naming = "plain") -> VecSolution:
    """``vec X = (R^T kron P) G [c''_head ; theta]`` with theta free."""
    m, n, k, l = kf.dims
    ab = kf.rank
    c2 = transformed_rhs(kf, C)
    cert = tail_certificate(c2, ab)
    if cert:
        raise NoSolutionError("(B^T kron A) vec X = vec C has no solution: c'' has a nonzero tail", cert)
    head = c2.submatrix(0, ab, 0, 1)
    T = kf.right()
    free = n * k - ab
    if naming == "greek":
        names = greek_names([free])
    else:
        names = plain_names(free)
    constant = T.submatrix(0, n * k, 0, ab) @ head
    params = tuple((name, Matrix.column(T.col(ab + t))) for t, name in enumerate(names))
    return VecSolution(c2=c2, head=head, X_vec=ParametricMatrix(constant, params), shape=(n, k))


def kron_general_solution(kf: KronFactorization, C: Matrix, naming: Naming = "plain") -> GeneralSolution:
    vs = vec_solution(kf, C, naming)
    return GeneralSolution(X=vs.X, route="kronecker",
                           witnesses={"A": kf.fA, "B": kf.fB, "D": kf.D, "G": kf.G})


def kron_penrose_solution(kf: KronFactorization, C: Matrix, Gp: Matrix, y: Matrix) -> Matrix:
    """``unvec(G' vec C + (I - G' K) y)`` with ``K = B^T kron A``."""
    m, n, k, l = kf.dims
    K = kf.system_matrix()
    if not is_one_inverse(K, Gp):
        raise InvalidInverseError("G' is not a {1}-inverse of B^T kron A")
    if y.shape != (n * k, 1):
        raise ShapeError(f"y must be {n * k}x1, got {y.rows}x{y.cols}")
    c = vec(C)
    if K @ Gp @ c != c:
        raise NoSolutionError("(B^T kron A) vec X = vec C has no solution")
    x = Gp @ c + y - Gp @ (K @ y)
    return unvec(x, n, k)
