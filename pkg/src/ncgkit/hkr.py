"""Kähler forms of a commutative finite algebra and the maps epsilon_n, mu_n.

Omega^n A is presented as the quotient of A (x) A^(x)n, read as a_0 da_1 .. da_n,
by the Leibniz rule in every slot and antisymmetry between slots.  A basis of
the quotient is given by the standard tensors that are not pivots of the
reduced relation matrix.
"""
from __future__ import annotations

import itertools
from math import factorial

from sympy.combinatorics import Permutation

from .errors import PreconditionError
from .linalg import SparseMatrix, rref


def _flat(key, d):
    i = 0
    for k in key:
        i = i * d + k
    return i


def _unflat(i, d, length):
    out = []
    for _ in range(length):
        i, r = divmod(i, d)
        out.append(r)
    return tuple(reversed(out))


def _relations(alg, n):
    d = alg.dim
    table = alg.table
    rows = []
    for key in itertools.product(range(d), repeat=n + 1):
        for k in range(1, n + 1):
            # antisymmetry: swapping two form slots changes the sign
            for j in range(k + 1, n + 1):
                sw = list(key)
                sw[k], sw[j] = sw[j], sw[k]
                row: dict = {}
                for idx in (_flat(key, d), _flat(sw, d)):
                    row[idx] = row.get(idx, 0) + 1
                rows.append({i: v for i, v in row.items() if v != 0})
    # Leibniz: a0 d(xy) - a0 x dy - a0 y dx in slot k, other slots standard
    for rest in itertools.product(range(d), repeat=n + 1):
        a0 = rest[0]
        for k in range(1, n + 1):
            for x in range(d):
                for y in range(d):
                    row = {}

                    def add(front, slot, c):
                        for f, cf in front:
                            key = (f,) + rest[1:k] + (slot,) + rest[k + 1:]
                            idx = _flat(key, d)
                            row[idx] = row.get(idx, 0) + c * cf

                    for p, c in table[x][y]:
                        add(((a0, 1),), p, c)
                    add(table[a0][x], y, -1)
                    add(table[a0][y], x, -1)
                    row = {i: v for i, v in row.items() if v != 0}
                    if row:
                        rows.append(row)
    return rows


def kaehler_forms(alg, n: int):
    """Reduced relations and quotient basis of Omega^n A inside A^(n+1)."""
    if not alg.is_commutative():
        raise PreconditionError("Kähler forms need a commutative algebra")
    key = ("kaehler", n)
    if key in alg._cache:
        return alg._cache[key]
    d = alg.dim
    size = d ** (n + 1)
    if n == 0:
        out = ([], [], list(range(size)))
    else:
        rels = _relations(alg, n)
        rows, pcols = rref(SparseMatrix(len(rels), size, rels))
        pset = set(pcols)
        out = (rows, pcols, [j for j in range(size) if j not in pset])
    alg._cache[key] = out
    return out


def hkr_maps(alg, n: int):
    """Return (epsilon, mu, dim Omega^n) with epsilon: Omega^n -> A^(n+1) and mu: A^(n+1) -> Omega^n.

    epsilon antisymmetrizes a0 da1..dan to sum sgn(s) a0 (x) a_s(1) (x) .. (x) a_s(n);
    mu sends a0 (x) .. (x) an to the class of a0 da1..dan.
    """
    if n < 0:
        raise PreconditionError("degree must be >= 0")
    rows, pcols, free = kaehler_forms(alg, n)
    d = alg.dim
    size = d ** (n + 1)
    pos = {j: i for i, j in enumerate(free)}
    mu = SparseMatrix(len(free), size)
    for j in free:
        mu.rows[pos[j]][j] = 1
    for row, pc in zip(rows, pcols):
        for j, v in row.items():
            if j != pc:
                mu.rows[pos[j]][pc] = -v
    eps = SparseMatrix(size, len(free))
    perms = [(p, Permutation(list(p)).signature()) for p in itertools.permutations(range(n))]
    for col, j in enumerate(free):
        key = _unflat(j, d, n + 1)
        for p, sg in perms:
            idx = _flat((key[0],) + tuple(key[1 + p[i]] for i in range(n)), d)
            v = eps.rows[idx].get(col, 0) + sg
            if v:
                eps.rows[idx][col] = v
            else:
                eps.rows[idx].pop(col, None)
    return eps, mu, len(free)


def check_hkr(alg, n: int) -> dict:
    """mu o epsilon = n! id and b o epsilon = 0, both as exact matrix identities."""
    from .cyclic import algebra_cyclic_module
    eps, mu, dim = hkr_maps(alg, n)
    ok_mu = (mu @ eps) == SparseMatrix.identity(dim, factorial(n))
    if n == 0:
        ok_b = True
    else:
        ok_b = (algebra_cyclic_module(alg, n).b(n) @ eps).is_zero()
    return {"degree": n, "kaehler_dim": dim, "mu_eps_is_factorial": ok_mu, "b_eps_zero": ok_b}
