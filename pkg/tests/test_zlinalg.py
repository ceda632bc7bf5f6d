import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from monodromy.zlinalg import (
    AbelianGroup, IntMatrix, cokernel, column_span_basis, int_rank, kernel_basis,
    primitive, smith_normal_form,
)


def cofactor_det(rows):
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


def determinantal_diagonal(rows, n_rows, n_cols):
    """SNF diagonal from gcds of k x k minors (independent oracle)."""
    divisors = [1]
    for k in range(1, min(n_rows, n_cols) + 1):
        g = 0
        for R in itertools.combinations(range(n_rows), k):
            for C in itertools.combinations(range(n_cols), k):
                g = gcd(g, cofactor_det([[rows[i][j] for j in C] for i in R]))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(divisors[k] // divisors[k - 1] if divisors[k - 1] else 0)
    return out


matrices = st.integers(0, 5).flatmap(lambda r: st.integers(0, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    .map(lambda rows: IntMatrix.from_rows(rows, cols=c))))


def test_identity_diagonal():
    assert smith_normal_form(IntMatrix.identity(2)).diagonal == (1, 1)


def test_worked_example():
    A = IntMatrix.from_rows([[2, 4], [6, 8]])
    assert smith_normal_form(A).diagonal == (2, 4)
    assert cokernel(A) == AbelianGroup(0, (2, 4))


def test_zero_matrix():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == (0, 0)
    assert int_rank(IntMatrix.zeros(3, 3)) == 0


def test_cokernel_small_cases():
    assert cokernel(IntMatrix.identity(2)) == AbelianGroup(0)
    assert cokernel(IntMatrix.from_rows([[2]])) == AbelianGroup(0, (2,))


def test_rank_examples():
    assert int_rank(IntMatrix.identity(3)) == 3
    assert int_rank(IntMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_empty_matrices():
    S = smith_normal_form(IntMatrix.zeros(0, 3))
    assert S.diagonal == ()
    assert cokernel(IntMatrix.zeros(3, 0)) == AbelianGroup(3)


def test_abelian_group_rejects_broken_chain():
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    assert str(AbelianGroup(2, (2,))) == "Z^2 + Z/2"


@given(matrices)
def test_snf_invariants(A):
    S = smith_normal_form(A)
    assert S.U @ A @ S.V == S.D
    assert abs(S.U.det()) == 1 and abs(S.V.det()) == 1
    assert S.U @ S.U_inv == IntMatrix.identity(A.rows)
    assert S.V @ S.V_inv == IntMatrix.identity(A.cols)
    diag = list(S.diagonal)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0
    for i in range(A.rows):
        for j in range(A.cols):
            assert S.D[i, j] == (diag[i] if i == j else 0)


@given(matrices)
def test_snf_matches_minor_gcds(A):
    if A.rows > 4 or A.cols > 4:
        return
    assert list(smith_normal_form(A).diagonal) == determinantal_diagonal(A.to_rows(), A.rows, A.cols)


@given(matrices)
def test_deterministic(A):
    assert smith_normal_form(A) == smith_normal_form(A)


@given(matrices, st.randoms(use_true_random=False))
def test_cokernel_invariant_under_signed_permutations(A, r):
    rows = A.to_rows()
    r.shuffle(rows)
    cols = list(range(A.cols))
    r.shuffle(cols)
    signs = [r.choice((1, -1)) for _ in cols]
    B = IntMatrix.from_rows([[s * row[c] for c, s in zip(cols, signs)] for row in rows], cols=A.cols)
    assert cokernel(A) == cokernel(B)


@given(matrices)
def test_rank_of_transpose(A):
    assert int_rank(A) == int_rank(A.T)


@given(matrices)
def test_kernel_basis(A):
    K = kernel_basis(A)
    assert len(K) == A.cols - int_rank(A)
    for v in K:
        assert not any(A.apply(v))


def test_span_basis_and_primitive():
    basis = column_span_basis([(2, 0), (0, 2), (2, 2)], 2)
    assert len(basis) == 2
    assert abs(IntMatrix.from_columns(basis, rows=2).det()) == 4
    assert primitive((0, -4, 6)) == (0, 2, -3)
