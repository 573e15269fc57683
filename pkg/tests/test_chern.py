import random
import warnings

import numpy as np
import pytest

from ncgkit.algebra import (Representation, direct_sum, group_algebra, matrix_algebra, normalized_trace_state,
                            trace_space, truncated_polynomial)
from ncgkit.chern import (FredholmModule, KIdempotent, KInvertible, OddCharacterWarning, chern_character_chain,
                          cyclic_cocycle_basis, fredholm_character, fredholm_from_pair, fredholm_index,
                          pair_bB, pair_even, pair_odd, random_idempotent, random_invertible,
                          regular_representation, toy_fredholm_module, trace_cocycle, trace_pairing,
                          winding_cocycle)
from ncgkit.cochains import Cochain, cochain_b, cyclic_projection, random_cochain
from ncgkit.errors import PreconditionError, ValidationError
from ncgkit.groups import cyclic_group
from ncgkit.lazy import laurent_algebra

M2 = matrix_algebra(2)
CZ3 = group_algebra(cyclic_group(3))


def test_trace_pairing_counts_rank():
    tau = normalized_trace_state(M2).scaled(2)  # the matrix trace
    e = KIdempotent(M2, [[[1, 0, 0, 0]]])
    assert trace_pairing(tau, e) == 1
    assert pair_even(trace_cocycle(tau), e) == 1


def test_non_idempotent_rejected():
    with pytest.raises(ValidationError):
        KIdempotent(M2, [[[2, 0, 0, 2]]])
    with pytest.raises(ValidationError):
        KInvertible(M2, [[[1, 0, 0, 1]]], [[[2, 0, 0, 2]]])


@pytest.mark.parametrize("alg", [M2, CZ3], ids=["m2", "cz3"])
def test_conjugation_and_stabilization(alg):
    rng = random.Random(7)
    cocycles = cyclic_cocycle_basis(alg, 0) + cyclic_cocycle_basis(alg, 2)
    for _ in range(10):
        e = random_idempotent(alg, 2, rng, conjugate=False)
        u = random_invertible(alg, 2, rng)
        f = e.conjugated(u)
        for phi in cocycles:
            v = pair_even(phi, e)
            assert pair_even(phi, f) == v
            assert pair_even(phi, e.stabilized()) == v


def test_coboundaries_pair_to_zero():
    rng = random.Random(3)
    for _ in range(10):
        e = random_idempotent(M2, 2, rng)
        psi = cyclic_projection(random_cochain(M2, 1, rng))
        assert pair_even(Cochain(M2, 2, cochain_b(M2, psi.data)), e) == 0
        u = random_invertible(M2, 2, rng)
        psi0 = random_cochain(M2, 0, rng)
        assert pair_odd(Cochain(M2, 1, cochain_b(M2, psi0.data)), u) == 0


def test_non_cocycle_rejected():
    rng = random.Random(0)
    phi = random_cochain(M2, 2, rng)
    e = random_idempotent(M2, 1, rng)
    with pytest.raises(PreconditionError):
        pair_even(phi, e)


def test_pair_bB_reduces_to_trace():
    rng = random.Random(11)
    tau = trace_space(CZ3)[0]
    zero = Cochain(CZ3, 2, np.zeros((3, 3, 3), dtype=object))
    for _ in range(5):
        e = random_idempotent(CZ3, 2, rng)
        assert pair_bB([trace_cocycle(tau), zero], e) == trace_pairing(tau, e)


def test_chern_chain_components():
    e = KIdempotent(M2, [[[1, 0, 0, 0]]])
    chains = chern_character_chain(e, 4)
    assert [c.degree for c in chains] == [0, 2, 4]


@pytest.mark.parametrize("k", [1, 2, -1, 3])
def test_winding_pairing(k):
    L = laurent_algebra()
    u = KInvertible(L, [[{k: 1}]], [[{-k: 1}]])
    # oracle: phi(u, u^-1) = sum_k k u_{-k} (u^-1)_k = -k for u = z^k
    assert pair_odd(winding_cocycle(), u) == -k


def test_toy_fredholm_module():
    FM = toy_fredholm_module()
    e = KIdempotent(FM.algebra, [[[1, 0]]])
    assert fredholm_index(FM, e) == 1
    e2 = KIdempotent(FM.algebra, [[[0, 1]]])
    assert fredholm_index(FM, e2) == -1
    with warnings.catch_warnings():
        warnings.simplefilter("error", OddCharacterWarning)
        with pytest.raises(OddCharacterWarning):
            fredholm_character(FM, 1)


def test_fredholm_validation():
    A = toy_fredholm_module().algebra
    with pytest.raises(ValidationError):
        FredholmModule(A, [1, -1], np.eye(2, dtype=object),
                       [np.diag(np.array([1, 0], dtype=object)), np.diag(np.array([0, 1], dtype=object))])


def test_fredholm_from_regular_pair():
    A = direct_sum(matrix_algebra(1), matrix_algebra(2))
    R = regular_representation(A)
    FM = fredholm_from_pair(A, R, R)
    e = KIdempotent(A, [[list(A.unit)]])
    assert fredholm_index(FM, e) == 0
