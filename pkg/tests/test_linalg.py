import pytest
from hypothesis import given, strategies as st

from oracles import determinantal_factors, leibniz_det
from smalehom.errors import DimensionError
from smalehom.linalg import (
    IntMatrix,
    cokernel_invariants,
    determinant,
    exterior_power,
    image_basis,
    inverse_unimodular,
    is_unimodular,
    kernel_basis,
    lattice_contains,
    minors_gcd,
    preimage_lattice,
    rank,
    smith_normal_form,
    solve_integer,
)


def matrices(max_rows=4, max_cols=4, lo=-5, hi=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: IntMatrix(r, c, rows))))


def square(max_n=4, lo=-4, hi=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
        .map(lambda rows: IntMatrix(n, n, rows)))


def test_snf_small_example():
    A = IntMatrix.from_rows([[2, 4], [6, 8]])
    snf = smith_normal_form(A)
    assert snf.factors == (2, 4)
    assert snf.U @ A @ snf.V == snf.S
    assert cokernel_invariants(A) == (0, [2, 4])


def test_snf_zero_and_empty():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).factors == (0, 0)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).rank == 0
    assert cokernel_invariants(IntMatrix.zeros(2, 0)) == (2, [])
    assert cokernel_invariants(IntMatrix.zeros(0, 3)) == (0, [])


def test_kernel_of_laplacian_like():
    K = kernel_basis(IntMatrix.from_rows([[1, -1], [-1, 1]]))
    assert K.cols == 1 and abs(K[0, 0]) == 1 and K[0, 0] == K[1, 0]


@given(matrices())
def test_snf_decomposition_is_exact(A):
    snf = smith_normal_form(A)
    assert snf.U @ A @ snf.V == snf.S
    assert snf.U @ snf.U_inv == IntMatrix.identity(A.rows)
    assert snf.V @ snf.V_inv == IntMatrix.identity(A.cols)
    assert snf.S.is_diagonal()
    f = [x for x in snf.factors if x]
    assert list(snf.factors) == f + [0] * (len(snf.factors) - len(f))
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert len(f) == rank(A)


@given(matrices(lo=-3, hi=3))
def test_snf_matches_minors(A):
    assert [f for f in smith_normal_form(A).factors if f] == determinantal_factors([list(r) for r in A.tolist()])


@given(square())
def test_determinant_matches_leibniz(A):
    assert determinant(A) == leibniz_det(A.tolist())


@given(matrices())
def test_kernel_is_saturated(A):
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - rank(A)
    # saturated: the cokernel of K is free
    assert cokernel_invariants(K)[1] == []


@given(matrices(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integer_roundtrip(A, x):
    x = IntMatrix.from_columns([x[:A.cols]], A.cols)
    B = A @ x
    X = solve_integer(A, B)
    assert X is not None and A @ X == B


def test_solve_integer_reports_no_solution():
    assert solve_integer(IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[1]])) is None


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_preimage_lattice(M, Q):
    if Q.rows != M.rows:
        Q = IntMatrix.zeros(M.rows, 0)
    L = preimage_lattice(M, Q)
    assert lattice_contains(Q, M @ L)
    assert lattice_contains(L, kernel_basis(M))


@given(matrices())
def test_image_basis_spans_same_lattice(X):
    B = image_basis(X)
    assert B.cols == rank(X)
    assert lattice_contains(B, X) and lattice_contains(X, B)


@given(square(3, -2, 2), square(3, -2, 2))
def test_exterior_power_is_multiplicative(A, B):
    if A.rows != B.rows:
        return
    for k in range(A.rows + 1):
        assert exterior_power(A @ B, k) == exterior_power(A, k) @ exterior_power(B, k)


def test_exterior_power_examples():
    assert exterior_power(IntMatrix.diagonal([2, 3]), 2) == IntMatrix.from_rows([[6]])
    assert exterior_power(IntMatrix.diagonal([2, 3]), 0) == IntMatrix.identity(1)
    A = IntMatrix.from_rows([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert exterior_power(A, 3) == IntMatrix.from_rows([[determinant(A)]])
    with pytest.raises(DimensionError):
        exterior_power(A, 4)


def test_unimodular_inverse():
    A = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert is_unimodular(A)
    assert A @ inverse_unimodular(A) == IntMatrix.identity(2)
    assert not is_unimodular(IntMatrix.diagonal([2, 1]))


def test_minors_gcd():
    A = IntMatrix.from_rows([[2, 4], [6, 8]])
    assert minors_gcd(A, 1) == 2 and minors_gcd(A, 2) == 8


def test_matrix_shape_checks():
    with pytest.raises(DimensionError):
        IntMatrix(2, 2, [[1, 2]])
    with pytest.raises(DimensionError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)
    assert IntMatrix.zeros(0, 3).T.shape == (3, 0)
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert A.kron(IntMatrix.identity(2))[2, 0] == 3
