"""Randomized identity checks shared by the test suite and `ncg selftest`.

Each check returns the names of the identities that failed, so an empty list
means everything held exactly.
"""
from __future__ import annotations

import numpy as np

from .cochains import (chain_B_dense, chain_b_dense, chain_lambda_dense, chain_N_dense, cochain_B,
                       cochain_b, cochain_b_prime, cochain_lambda, cochain_N, random_chain,
                       random_cochain)


def _zero(x) -> bool:
    return not np.any(np.asarray(x) != 0)


def cochain_identity_failures(alg, phi) -> list:
    """b^2, b'^2, (1-l)b = b'(1-l), bN = Nb', N(1-l) = (1-l)N = 0, B^2, bB + Bb on one cochain."""
    A, f = alg, phi
    n = f.ndim - 1
    bad = []
    one_minus = lambda x: x - cochain_lambda(A, x)
    if not _zero(cochain_b(A, cochain_b(A, f))):
        bad.append("b^2")
    if not _zero(cochain_b_prime(A, cochain_b_prime(A, f))):
        bad.append("b'^2")
    if not _zero(one_minus(cochain_b(A, f)) - cochain_b_prime(A, one_minus(f))):
        bad.append("(1-l)b = b'(1-l)")
    if not _zero(cochain_b(A, cochain_N(A, f)) - cochain_N(A, cochain_b_prime(A, f))):
        bad.append("bN = Nb'")
    if not (_zero(cochain_N(A, one_minus(f))) and _zero(one_minus(cochain_N(A, f)))):
        bad.append("N(1-l) = (1-l)N = 0")
    if n >= 2 and not _zero(cochain_B(A, cochain_B(A, f))):
        bad.append("B^2")
    if n >= 1 and not _zero(cochain_b(A, cochain_B(A, f)) + cochain_B(A, cochain_b(A, f))):
        bad.append("bB + Bb")
    return bad


def chain_identity_failures(alg, x) -> list:
    """The chain side: b^2, b'^2, (1-l)b' = b(1-l), b'N = Nb, N(1-l) = 0, B^2, bB + Bb."""
    A = alg
    n = x.ndim - 1
    bad = []
    one_minus = lambda y: y - chain_lambda_dense(A, y)
    bp = lambda y: chain_b_dense(A, y, last=False)
    if n >= 2 and not _zero(chain_b_dense(A, chain_b_dense(A, x))):
        bad.append("b^2")
    if n >= 2 and not _zero(bp(bp(x))):
        bad.append("b'^2")
    if n >= 1 and not _zero(one_minus(bp(x)) - chain_b_dense(A, one_minus(x))):
        bad.append("(1-l)b' = b(1-l)")
    if n >= 1 and not _zero(bp(chain_N_dense(A, x)) - chain_N_dense(A, chain_b_dense(A, x))):
        bad.append("b'N = Nb")
    if not (_zero(chain_N_dense(A, one_minus(x))) and _zero(one_minus(chain_N_dense(A, x)))):
        bad.append("N(1-l) = (1-l)N = 0")
    if not _zero(chain_B_dense(A, chain_B_dense(A, x))):
        bad.append("B^2")
    if n >= 1 and not _zero(chain_b_dense(A, chain_B_dense(A, x)) + chain_B_dense(A, chain_b_dense(A, x))):
        bad.append("bB + Bb")
    return bad


def operator_suite(algebras, trials: int, rng, max_degree: int = 3) -> dict:
    """Run `trials` random cochain and chain checks spread over `algebras`.

    Returns {"trials": .., "failures": [[algebra index, degree, side, name], ...]}.
    """
    failures = []
    for t in range(trials):
        k = t % len(algebras)
        A = algebras[k]
        n = rng.randint(0, max_degree)
        phi = random_cochain(A, n, rng, density=0.6).data
        for name in cochain_identity_failures(A, phi):
            failures.append([k, n, "cochain", name])
        x = random_chain(A, n, rng, density=0.6).to_dense()
        for name in chain_identity_failures(A, x):
            failures.append([k, n, "chain", name])
    return {"trials": trials, "failures": failures}
