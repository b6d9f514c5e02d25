import random

from hypothesis import given, settings, strategies as st

from cekit.matrix import Matrix, column_span_basis, kernel_basis, smith_normal_form, solve
from cekit.rings import ZZ, ring_mod

RINGS = [ZZ, ring_mod(2), ring_mod(4), ring_mod(6), ring_mod(9)]


def mat_strategy(ring, max_dim=5, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.integers(lo, hi), min_size=r * c, max_size=r * c
            ).map(lambda e: Matrix(ring, r, c, tuple(ring.normalize(x) for x in e)))
        )
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(RINGS).flatmap(mat_strategy))
def test_snf_identities(A):
    s = smith_normal_form(A)
    assert s.S == s.U * A * s.V
    assert s.U * s.U_inv == Matrix.identity(A.ring, A.rows)
    assert s.V * s.V_inv == Matrix.identity(A.ring, A.cols)
    # off-diagonal zero
    for i in range(s.S.rows):
        for j in range(s.S.cols):
            if i != j:
                assert s.S[i, j] == 0


@settings(max_examples=60, deadline=None)
@given(mat_strategy(ZZ))
def test_snf_divisibility_over_z(A):
    diag = [abs(x) for x in smith_normal_form(A).diagonal()]
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(RINGS).flatmap(mat_strategy))
def test_solve_recovers_constructed_solutions(A):
    rng = random.Random(A.rows * 1000 + A.cols)
    x0 = Matrix(A.ring, A.cols, 1, tuple(A.ring.normalize(rng.randint(-4, 4)) for _ in range(A.cols)))
    b = A * x0
    x = solve(A, b)
    assert x is not None
    assert A * x == b


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(RINGS).flatmap(mat_strategy))
def test_kernel_annihilates_and_is_complete(A):
    K = kernel_basis(A)
    assert (A * K).is_zero
    # any constructed kernel element lies in the span of the basis
    rng = random.Random(A.rows * 7 + A.cols)
    if K.cols:
        combo = Matrix(A.ring, K.cols, 1, tuple(A.ring.normalize(rng.randint(-3, 3)) for _ in range(K.cols)))
        v = K * combo
        assert solve(K, v) is not None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(RINGS).flatmap(mat_strategy))
def test_column_span_basis_spans(A):
    B = column_span_basis(A)
    for j in range(A.cols):
        assert solve(B, A.col(j)) is not None
    for j in range(B.cols):
        assert solve(A, B.col(j)) is not None


def test_solve_reports_infeasibility():
    A = Matrix(ZZ, 1, 1, (2,))
    assert solve(A, Matrix.column(ZZ, [1])) is None
    r4 = ring_mod(4)
    assert solve(Matrix(r4, 1, 1, (2,)), Matrix.column(r4, [1])) is None
    assert solve(Matrix(r4, 1, 1, (2,)), Matrix.column(r4, [2])) is not None


def test_snf_mod_m_diagonal_divides_modulus():
    r6 = ring_mod(6)
    A = Matrix(r6, 2, 2, (2, 4, 4, 2))
    s = smith_normal_form(A)
    assert s.S == s.U * A * s.V
    for d in s.diagonal():
        assert d == 0 or 6 % d == 0 or d == 1
