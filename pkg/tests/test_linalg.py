from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from ncgkit.cyclo import zeta
from ncgkit.linalg import SparseMatrix, nullspace, rank, rref, solve

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def int_matrices(draw):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def sparse(rows):
    return SparseMatrix.from_dense(rows)


@given(int_matrices())
def test_rank_matches_sympy(rows):
    # independent oracle: sympy's exact rank
    assert rank(sparse(rows)) == sympy.Matrix(rows).rank()


@given(int_matrices())
def test_nullspace_vectors_are_killed(rows):
    M = sparse(rows)
    ns = nullspace(M)
    assert len(ns) == len(rows[0]) - rank(M)
    for v in ns:
        assert all(x == 0 for x in M.apply_sparse(v).values())


@given(int_matrices(), st.data())
def test_solve_consistent_systems(rows, data):
    M = sparse(rows)
    x = [data.draw(entries) for _ in range(len(rows[0]))]
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    sol = solve(M, rhs)
    assert sol is not None
    got = M.apply_sparse(sol)
    assert [got.get(i, 0) for i in range(len(rows))] == rhs


def test_solve_inconsistent():
    assert solve(sparse([[1, 1], [2, 2]]), [1, 3]) is None


def test_cyclotomic_rank():
    w = zeta(3)
    # rows (1, w) and (w^2, 1) are proportional since w^3 = 1
    assert rank(sparse([[1, w], [w ** 2, 1]])) == 1
    assert rank(sparse([[1, w], [w, 1]])) == 2


def test_fraction_entries():
    M = sparse([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(M) == 1


def test_transpose_and_product():
    M = sparse([[1, 2, 0], [0, 1, 3]])
    assert M.transpose().shape == (3, 2)
    P = M @ M.transpose()
    assert P.to_dense().tolist() == [[5, 2], [2, 10]]
    assert rref(M) is not None
