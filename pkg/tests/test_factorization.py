import random

import pytest
from hypothesis import given, settings

from axbc.errors import ShapeError
from axbc.exact import Matrix, kron
from axbc.factorization import (RankNormalForm, RohdeBlocks, inverse, is_one_inverse, is_regular, nullspace,
                                rank, rank_normal_form, rohde_one_inverse, solve, verify_rank_normal_form)
from axbc.generate import random_matrix, random_of_rank, random_regular
from conftest import matrices
from oracles import det_leibniz, rank_by_minors, rows_of
from worked_examples import A1, A3, B1, B3, FA1, FA3, FB1, FB3

M = Matrix.from_rows


def test_known_witnesses_verify():
    assert verify_rank_normal_form(A1, FA1)
    assert verify_rank_normal_form(B1, FB1)
    assert verify_rank_normal_form(A3, FA3)
    assert verify_rank_normal_form(B3, FB3)


def test_identity_normal_form():
    f = rank_normal_form(Matrix.identity(4))
    assert f.rank == 4
    assert f.Q == Matrix.identity(4) and f.P == Matrix.identity(4)


def test_zero_matrix_has_rank_zero():
    Z = Matrix.zeros(3, 2)
    f = rank_normal_form(Z)
    assert f.rank == 0
    assert verify_rank_normal_form(Z, f)


@pytest.mark.parametrize("shape", [(0, 0), (0, 3), (3, 0)])
def test_empty_normal_form(shape):
    Z = Matrix.zeros(*shape)
    f = rank_normal_form(Z)
    assert f.rank == 0
    assert verify_rank_normal_form(Z, f)


def test_identity_witness_rejects_non_normal_matrix():
    A = M([[1, 2], [3, 4]])
    f = RankNormalForm(Matrix.identity(2), Matrix.identity(2), 2)
    assert not verify_rank_normal_form(A, f)


def test_singular_transform_rejected():
    # Q A P has the right pattern but Q is singular
    A = M([[1, 0], [0, 0]])
    f = RankNormalForm(M([[1, 0], [0, 0]]), Matrix.identity(2), 1)
    assert f.Q @ A @ f.P == f.E
    assert not verify_rank_normal_form(A, f)


def test_verify_shape_mismatch():
    with pytest.raises(ShapeError):
        verify_rank_normal_form(A1, FB3)


def test_random_normal_forms_verify():
    rng = random.Random(1)
    for _ in range(200):
        A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        if rng.random() < 0.5:
            A = random_of_rank(rng, A.rows, A.cols, rng.randint(0, min(A.shape)))
        assert verify_rank_normal_form(A, rank_normal_form(A))


def test_normal_form_is_deterministic():
    assert rank_normal_form(A3) == rank_normal_form(A3)


@settings(max_examples=150)
@given(matrices(min_dim=1, max_dim=4))
def test_rank_matches_minor_brute_force(A):
    expected = rank_by_minors(A)
    assert rank_normal_form(A).rank == expected
    assert rank(A) == expected


def test_rohde_zero_blocks_regular_is_inverse():
    A = M([[2, 1], [7, 4]])
    G = rohde_one_inverse(rank_normal_form(A))
    assert A @ G == Matrix.identity(2)
    assert G == inverse(A)


def test_rohde_example_is_one_inverse():
    G = rohde_one_inverse(FA1)
    assert A1 @ G @ A1 == A1
    assert G.shape == (2, 3)


def test_rohde_random_blocks():
    rng = random.Random(2)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = random_of_rank(rng, m, n, rng.randint(0, min(m, n)))
        f = rank_normal_form(A)
        G = rohde_one_inverse(f, RohdeBlocks.random(rng, f.rank, m, n))
        assert A @ G @ A == A
        assert is_one_inverse(A, G)


def test_rohde_rank_zero_collapses_to_pwq():
    Z = Matrix.zeros(2, 3)
    f = rank_normal_form(Z)
    W = M([[1, 2], [3, 4], [5, 6]])
    G = rohde_one_inverse(f, RohdeBlocks(Matrix.zeros(0, 2), Matrix.zeros(3, 0), W))
    assert G == f.P @ W @ f.Q


def test_rohde_block_shape_checked():
    with pytest.raises(ShapeError):
        rohde_one_inverse(FA1, RohdeBlocks.zero(1, 3, 2))


def test_is_one_inverse_cases():
    A = M([[2, 1], [7, 4]])
    assert is_one_inverse(A, inverse(A))
    assert not is_one_inverse(A, Matrix.zeros(2, 2))
    assert is_one_inverse(Matrix.zeros(2, 3), Matrix.zeros(3, 2))
    with pytest.raises(ShapeError):
        is_one_inverse(A1, Matrix.zeros(3, 2))


def test_kron_of_one_inverses():
    rng = random.Random(3)
    for _ in range(50):
        A = random_of_rank(rng, rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 1))
        B = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        fA, fB = rank_normal_form(A), rank_normal_form(B)
        GA = rohde_one_inverse(fA, RohdeBlocks.random(rng, fA.rank, fA.m, fA.n))
        GB = rohde_one_inverse(fB, RohdeBlocks.random(rng, fB.rank, fB.m, fB.n))
        K = kron(A, B)
        assert K @ kron(GA, GB) @ K == K


def test_inverse_and_regularity():
    rng = random.Random(4)
    for _ in range(30):
        R = random_regular(rng, rng.randint(1, 4))
        assert det_leibniz(rows_of(R)) != 0
        assert is_regular(R)
        assert R @ inverse(R) == Matrix.identity(R.rows)
    with pytest.raises(ValueError):
        inverse(M([[1, 2], [2, 4]]))


def test_solve_and_nullspace():
    K = M([[1, 2, 3], [2, 4, 6]])
    x = solve(K, Matrix.column([1, 2]))
    assert K @ x == Matrix.column([1, 2])
    assert solve(K, Matrix.column([1, 3])) is None
    N = nullspace(K)
    assert N.shape == (3, 2)
    assert (K @ N).is_zero()
    assert rank(N) == 2
