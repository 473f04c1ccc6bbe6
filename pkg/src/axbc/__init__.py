"""Exact consistency test and minimal-parameter general solution of ``A X B = C``."""

from .errors import (AXBError, InvalidInverseError, InvalidWitnessError, NoSolutionError,
                     ParseError, ShapeError, UnboundParameterError)
from .exact import Matrix, PermutationMatrix, format_matrix, kron, parse_matrix, unvec, vec
from .factorization import (RankNormalForm, RohdeBlocks, is_one_inverse, rank, rank_normal_form,
                            rohde_one_inverse, verify_rank_normal_form)
from .kron_route import (KronFactorization, build_permutations, kron_factorization,
                         kron_general_solution, kron_one_inverse, kron_penrose_solution,
                         vec_consistency)
from .parametric import ParametricMatrix, same_affine_set
from .solver import (GeneralSolution, general_solution, is_consistent, penrose_condition,
                     penrose_solution, solve_membership, substitute, transform_rhs)

__version__ = "0.1.0"


def solve(A, B, C, route="direct", fA=None, fB=None, naming="plain") -> GeneralSolution:
    """General solution by either route (``"direct"`` or ``"kron"``)."""
    if route == "kron":
        return kron_general_solution(kron_factorization(A, B, fA, fB), C, naming)
    if route != "direct":
        raise ValueError(f"unknown route {route!r}")
    return general_solution(A, B, C, fA, fB, naming)
