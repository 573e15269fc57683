import json

import pytest
from hypothesis import given, strategies as st

from ncgkit import io
from ncgkit.algebra import direct_sum, group_algebra, matrix_algebra, rational_torus, truncated_polynomial
from ncgkit.chern import toy_fredholm_module
from ncgkit.errors import ValidationError
from ncgkit.groups import cyclic_group, symmetric_group
from ncgkit.hopf import build_hopf

ALGEBRAS = [matrix_algebra(2), group_algebra(cyclic_group(3)), group_algebra(symmetric_group(3)),
            rational_torus(1, 3), truncated_polynomial([2, 3]), direct_sum(matrix_algebra(2), matrix_algebra(1))]


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: str(a.dim))
def test_algebra_round_trip_is_byte_stable(alg):
    text = io.dumps(io.algebra_to_json(alg))
    again = io.algebra_from_json(json.loads(text))
    assert io.dumps(io.algebra_to_json(again)) == text
    assert (again.struct == alg.struct).all()


def test_cyclotomic_scalars_use_file_conductor():
    A = group_algebra(cyclic_group(3))
    data = io.algebra_to_json(A)
    assert data["scalar_conductor"] == 3
    # z stands for zeta_3 inside this file
    assert io.scalar_from_json("z^3", 3) == 1


@given(st.sampled_from(["group_algebra", "function_algebra"]), st.sampled_from(["Z2", "Z3", "S3"]))
def test_hopf_round_trip(kind, group):
    H = build_hopf(kind, group)
    text = io.dumps(H)
    assert io.dumps(io.hopf_from_json(json.loads(text))) == text


def test_fredholm_round_trip():
    FM = toy_fredholm_module()
    data = io.fredholm_to_json(FM)
    assert io.fredholm_to_json(io.fredholm_from_json(json.loads(io.dumps(data)))) == data


def test_malformed_inputs():
    with pytest.raises(ValidationError):
        io.algebra_from_json({"dim": 2, "unit": [1, 0], "structure": [[0, 0, 5, "1"]]})
    with pytest.raises(ValidationError):
        io.algebra_from_json({"dim": 1, "unit": [1]})
    with pytest.raises(ValidationError):
        io.scalar_from_json(0.5)


def test_shorthand_forms():
    assert io.algebra_from_json({"kind": "matrix", "n": 2}).dim == 4
    assert io.hopf_from_json({"kind": "function_algebra", "group": "Z3"}).dim == 3
    alg, (phi,) = io.cochains_from_json({"builtin": "winding"})
    assert phi.degree == 1
