from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgkit.algebra import truncated_polynomial
from ncgkit.cochains import Cochain, multiplication_cochain
from ncgkit.cyclo import zeta
from ncgkit.errors import PreconditionError
from ncgkit.star import (PoissonStruct, PolyElement, WeylElement, bidifferential, bivector_cochain,
                         check_associativity, deformation_step, euler_derivations, moyal_product,
                         poisson_bracket, principal_symbol, symbol_in_degree, weyl_normal_form, weyl_poisson)

I = zeta(4)
PI1 = PoissonStruct.standard(1)
PI2 = PoissonStruct.standard(2)


@st.composite
def polys(draw, names, max_deg=2, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in names)
        terms[e] = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 2)))
    return PolyElement(names, terms)


def test_parse_and_print():
    f = PolyElement.from_text("3/2 x^2 y - z(4) x", ("x", "y"))
    assert f.coefficient((2, 1)) == Fraction(3, 2)
    assert f.coefficient((1, 0)) == -I
    assert PolyElement.from_text(f.to_text(), ("x", "y")) == f


def test_canonical_bracket():
    x, y = (PolyElement.variable(PI1.names, i) for i in range(2))
    assert poisson_bracket(PI1, x, y) == PolyElement.constant(PI1.names, 1)


def test_commutator_anchor():
    # known value: x * y - y * x = -i h
    x, y = (PolyElement.variable(PI1.names, i) for i in range(2))
    c = moyal_product(PI1, x, y, 3) - moyal_product(PI1, y, x, 3)
    assert c.coeff(0).is_zero()
    assert c.coeff(1) == PolyElement.constant(PI1.names, -I)
    assert c.coeff(2).is_zero() and c.coeff(3).is_zero()


@given(polys(PI1.names), polys(PI1.names), polys(PI1.names))
def test_associativity_one_pair(f, g, h):
    assert check_associativity(PI1, f, g, h, 6) == "none"


@given(polys(PI2.names, 1), polys(PI2.names, 1), polys(PI2.names, 1))
def test_associativity_two_pairs(f, g, h):
    assert check_associativity(PI2, f, g, h, 4) == "none"


def test_wrong_normalization_breaks_associativity():
    f = PolyElement.from_text("x^2", PI1.names)
    g = PolyElement.from_text("y^2", PI1.names)
    h = PolyElement.from_text("y^2", PI1.names)
    assert check_associativity(PI1, f, g, h, 4) == "none"
    assert check_associativity(PI1, f, g, h, 4, scale={2: 2}) == 2


@given(polys(PI1.names), polys(PI1.names))
def test_first_order_is_poisson(f, g):
    c = moyal_product(PI1, f, g, 1) - moyal_product(PI1, g, f, 1)
    assert c.coeff(0).is_zero()
    assert c.coeff(1) == poisson_bracket(PI1, f, g) * (-I)


@given(polys(PI1.names), polys(PI1.names))
def test_bidifferential_low_orders(f, g):
    assert bidifferential(PI1, 0, f, g) == f * g
    assert bidifferential(PI1, 1, f, g) == poisson_bracket(PI1, f, g)


def test_poisson_validation():
    with pytest.raises(PreconditionError):
        PoissonStruct([[0, 1], [1, 0]])


def test_weyl_normal_form():
    assert weyl_normal_form(["p", "x"]).to_text() == "x p + 1"
    assert weyl_normal_form(["p", "x", "x"]).to_text() == "x^2 p + 2 x"
    assert weyl_normal_form([]).to_text() == "1"
    w = weyl_normal_form(["x", "x", "p"])
    assert principal_symbol(w) == PolyElement.from_text("x^2 y", PI1.names)


@given(st.lists(st.sampled_from(["x", "p"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["x", "p"]), min_size=1, max_size=4))
def test_commutator_symbol_is_bracket(u, v):
    a, b = weyl_normal_form(u), weyl_normal_form(v)
    comm = a * b - b * a
    k = a.degree() + b.degree() - 1
    expected = poisson_bracket(weyl_poisson(1), principal_symbol(a), principal_symbol(b))
    assert symbol_in_degree(comm, k) == expected


@given(st.lists(st.sampled_from(["x", "p"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["x", "p"]), min_size=1, max_size=4))
def test_symbol_is_multiplicative(u, v):
    a, b = weyl_normal_form(u), weyl_normal_form(v)
    assert principal_symbol(a * b) == principal_symbol(a) * principal_symbol(b)


def test_deformation_chain_on_truncated_polynomials():
    A = truncated_polynomial([2, 2])
    B = [multiplication_cochain(A), bivector_cochain(A, *euler_derivations(A, [2, 2]))]
    for n in range(2, 5):
        step = deformation_step(B, n)
        assert step.is_cocycle
        assert step.solution is not None and step.residual_zero
        B.append(step.solution)


def test_deformation_zero_start():
    A = truncated_polynomial([2])
    import numpy as np
    zero = Cochain(A, 2, np.zeros((2, 2, 2), dtype=object), mode="adjoint")
    step = deformation_step([multiplication_cochain(A), zero], 2)
    assert step.obstruction.is_zero() and step.solution.is_zero()


def test_deformation_preconditions():
    A = truncated_polynomial([2])
    with pytest.raises(PreconditionError):
        deformation_step([multiplication_cochain(A)], 2)
