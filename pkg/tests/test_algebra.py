import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncgkit.algebra import (FinAlgebra, LinearFunctional, as_matrix, block_ranks, build_algebra, direct_sum,
                            gns, group_algebra, matrix_algebra, normalized_trace_state, rational_torus,
                            stably_equivalent, tensor, trace_space, truncated_polynomial, wedderburn_blocks)
from ncgkit.errors import NotPositiveError, SplittingError, ValidationError
from ncgkit.groups import cyclic_group, symmetric_group

SMALL = [matrix_algebra(2), group_algebra(cyclic_group(3)), truncated_polynomial([2, 2]), rational_torus(1, 2),
         group_algebra(symmetric_group(3))]


def test_matrix_units_multiply():
    A = matrix_algebra(2)
    E11, E12, E21, E22 = (A.basis(i) for i in range(4))
    assert E12 * E21 == E11
    assert (E21 * E12) == E22
    assert (E12 * E12).is_zero()
    assert A.one() == E11 + E22


def test_bad_structure_rejected():
    c = np.zeros((2, 2, 2), dtype=object)
    c[0, 0, 0] = 1
    c[1, 1, 1] = 1
    c[0, 1, 1] = 1  # e0 e1 = e1 but e1 e0 = 0 and e0 + e1 is no unit
    with pytest.raises(ValidationError):
        FinAlgebra(c, [1, 1])


@pytest.mark.parametrize("alg", SMALL, ids=lambda a: "x".join(map(str, [a.dim])))
def test_validates(alg):
    alg.validate()


@given(st.sampled_from(SMALL), st.data())
def test_associativity_random(alg, data):
    vec = lambda: [data.draw(st.integers(-2, 2)) for _ in range(alg.dim)]
    x, y, z = alg.element(vec()), alg.element(vec()), alg.element(vec())
    assert (x * y) * z == x * (y * z)
    assert (x * y).star() == y.star() * x.star()


def test_trace_spaces():
    # oracle: number of simple blocks
    assert len(trace_space(matrix_algebra(3))) == 1
    assert len(trace_space(group_algebra(symmetric_group(3)))) == 3
    assert len(trace_space(truncated_polynomial([2]))) == 2


@pytest.mark.parametrize("q", [2, 3])
def test_rational_torus(q):
    A = rational_torus(1, q)
    traces = trace_space(A)
    assert len(traces) == 1
    # the trace only sees the identity monomial
    assert [i for i, v in enumerate(traces[0].values) if v != 0] == [A.labels.index("1")]
    assert wedderburn_blocks(A) == [q]


def test_wedderburn():
    assert wedderburn_blocks(group_algebra(symmetric_group(3))) == [1, 1, 2]
    assert wedderburn_blocks(direct_sum(matrix_algebra(2), matrix_algebra(1))) == [1, 2]
    assert wedderburn_blocks(tensor(matrix_algebra(2), group_algebra(cyclic_group(2)))) == [2, 2]
    with pytest.raises(SplittingError):
        wedderburn_blocks(truncated_polynomial([2]))


def test_gns():
    A = matrix_algebra(2)
    tr = gns(A, normalized_trace_state(A))
    assert tr.carrier_dim == 4 and tr.check_homomorphism()
    # a vector state gives back the defining representation
    vec = gns(A, LinearFunctional(A, [1, 0, 0, 0]))
    assert vec.carrier_dim == 2 and vec.check_homomorphism()
    with pytest.raises(NotPositiveError):
        gns(A, LinearFunctional(A, [2, 0, 0, -1]))


def test_stable_equivalence():
    A = matrix_algebra(2)
    e11 = as_matrix(A, [[[1, 0, 0, 0]]])
    e22 = as_matrix(A, [[[0, 0, 0, 1]]])
    one = as_matrix(A, [[[1, 0, 0, 1]]])
    assert stably_equivalent(A, e11, e22)
    assert not stably_equivalent(A, e11, one)
    assert block_ranks(A, one) == [2]


def test_build_algebra_dispatch():
    assert build_algebra({"kind": "matrix", "n": 2}).dim == 4
    assert build_algebra("rational_torus", 1, 2).dim == 4
    with pytest.raises(ValueError):
        build_algebra("nope")
