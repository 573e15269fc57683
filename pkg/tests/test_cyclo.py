from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgkit.cyclo import (CycloScalar, conj, cyclotomic_poly, format_scalar, inv, simplify, to_complex,
                          totient, zeta)
from ncgkit.textio import format_coeff, parse_scalar

CONDUCTORS = [1, 3, 4, 5, 8, 12]


@st.composite
def scalars(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4))
    total = 0
    for k, c in enumerate(coeffs):
        total = total + c * CycloScalar.root_of_unity(m, k)
    return simplify(total)


def test_totient_and_cyclotomic_degree():
    for m in range(1, 25):
        assert len(cyclotomic_poly(m)) - 1 == totient(m)


def test_roots_of_unity():
    assert zeta(4) ** 2 == -1
    assert zeta(3) ** 3 == 1
    assert simplify(1 + zeta(3) + zeta(3) ** 2) == 0
    assert zeta(6) ** 2 == zeta(3)


def test_mixed_conductors():
    # zeta_8^2 is zeta_4
    assert zeta(8) ** 2 == zeta(4)
    assert simplify(zeta(4) * zeta(3)) == zeta(12) ** 7


def test_complex_embedding():
    assert abs(to_complex(zeta(8)) - (2 ** -0.5) * (1 + 1j)) < 1e-12


@given(scalars(), scalars())
def test_field_axioms(x, y):
    assert simplify(x + y) == simplify(y + x)
    assert simplify(x * y) == simplify(y * x)
    assert simplify((x + y) - y) == x


@given(scalars())
def test_inverse_and_conjugate(x):
    if x != 0:
        assert simplify(x * inv(x)) == 1
    assert conj(conj(x)) == x
    assert abs(to_complex(conj(x)) - to_complex(x).conjugate()) < 1e-9


@given(scalars())
def test_format_parse_round_trip(x):
    m = x.m if isinstance(x, CycloScalar) else 1
    assert simplify(parse_scalar(format_scalar(x, conductor=m), m)) == x
    assert simplify(parse_scalar(format_coeff(x), 1)) == x


def test_format_examples():
    assert format_coeff(zeta(4)) == "z(4)"
    assert format_coeff(-Fraction(1, 2) * zeta(4)) == "-1/2*z(4)"
    assert format_scalar(Fraction(3, 2)) == "3/2"


def test_non_scalar_rejected():
    with pytest.raises(TypeError):
        simplify(CycloScalar.root_of_unity(3) + "a")
