from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgkit.errors import CertificationError, PreconditionError
from ncgkit.toeplitz import (LaurentSymbol, commutator_trace, index_by_kernels, index_routes,
                             toeplitz_index, toeplitz_op, winding_number)


def test_matrix_convention():
    T = toeplitz_op(LaurentSymbol.parse("z"), 4).matrix()
    # T_z is the unilateral shift e_k -> e_{k+1}
    assert [list(r) for r in T] == [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    T = toeplitz_op(LaurentSymbol.parse("2 + 3*z^-1"), 3).matrix()
    assert [list(r) for r in T] == [[2, 3, 0], [0, 2, 3], [0, 0, 2]]


def test_window_too_small():
    with pytest.raises(PreconditionError):
        toeplitz_op(LaurentSymbol.parse("z^5"), 3)


@pytest.mark.parametrize("text, w", [("z", 1), ("z^-2", -2), ("3", 0), ("2 + z", 0), ("1 + 3*z", 1),
                                     ("z^-1 + 4 + z", 0), ("z^2 - 5*z^3", 3)])
def test_winding(text, w):
    assert winding_number(LaurentSymbol.parse(text)) == w


@pytest.mark.parametrize("text", ["1 + z", "z - z^-1", "0"])
def test_uncertified(text):
    with pytest.raises(CertificationError):
        winding_number(LaurentSymbol.parse(text))


@pytest.mark.parametrize("k", range(-5, 6))
def test_monomial_routes_agree(k):
    r = index_routes(LaurentSymbol.monomial(k))
    assert r == {"winding": -k, "kernels": -k, "commutator_trace": -k}


def test_scaled_monomial():
    assert toeplitz_index(LaurentSymbol.monomial(3, Fraction(2, 3))) == -3


def test_kernel_route_needs_monomial():
    with pytest.raises(PreconditionError):
        index_by_kernels(LaurentSymbol.parse("2 + z"))
    assert set(index_routes("2 + z")) == {"winding"}


def test_commutator_traces():
    assert commutator_trace("z", "z^-1", 8) == -1
    assert commutator_trace("z^2", "z^-2", 16) == -2
    assert commutator_trace("z^-1", "z", 8) == 1
    with pytest.raises(PreconditionError):
        commutator_trace("z^3", "z^-3", 4)


small = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=3).map(LaurentSymbol)


def phi(f, g):
    return commutator_trace(f, g, 24)


@given(small, small, small)
def test_commutator_trace_is_cyclic_cocycle(a, b, c):
    assert phi(a, b) == -phi(b, a)
    assert phi(a * b, c) - phi(a, b * c) + phi(c * a, b) == 0
