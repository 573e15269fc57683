"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary of a pytest run, and also when this file is run as a script.
"""
import itertools
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ncgkit.algebra import (LinearFunctional, Representation, direct_sum, group_algebra, matrix_algebra,
                            rational_torus, trace_space, truncated_polynomial, wedderburn_blocks)
from ncgkit.checks import operator_suite
from ncgkit.chern import (FredholmModule, KIdempotent, cyclic_cocycle_basis, fredholm_character,
                          fredholm_from_pair, fredholm_index, pair_bB, pair_even, pair_odd, random_idempotent,
                          random_invertible, toy_fredholm_module, trace_cocycle, trace_pairing)
from ncgkit.cli import execute
from ncgkit.cochains import Cochain, cochain_b, cyclic_projection, multiplication_cochain, random_cochain
from ncgkit.cyclic import cohomology_dim, validate_cyclic_module
from ncgkit.cyclo import zeta
from ncgkit.groupoid import action_groupoid, groupoid_algebra, pairs_groupoid
from ncgkit.groups import cyclic_group
from ncgkit.hkr import check_hkr
from ncgkit.hopf import (build_hopf, characteristic_map, cm_cocyclic_module, dual_cyclic_module,
                         hopf_cyclic_dims, translation_action)
from ncgkit.psido import FormalPsiDO, commutator, radul_cocycle, residue_trace, trace_space_dimension
from ncgkit.star import (PoissonStruct, PolyElement, bivector_cochain, check_associativity, deformation_step,
                         euler_derivations, moyal_product, poisson_bracket)
from ncgkit.toeplitz import LaurentSymbol, commutator_trace, index_routes

ROOT = Path(__file__).resolve().parents[1]
I = zeta(4)
RESULTS = {}


def record(key, title, ok, detail=""):
    RESULTS[key] = f"[{'PASS' if ok else 'FAIL'}] {key:>2}. {title}" + (f": {detail}" if detail else "")
    print(RESULTS[key])
    assert ok, RESULTS[key]


def test_01_operator_identities():
    algs = [matrix_algebra(2), group_algebra(cyclic_group(3)), truncated_polynomial([2, 2]),
            rational_torus(1, 2), truncated_polynomial([3])]
    t0 = time.perf_counter()
    rep = operator_suite(algs, 200, random.Random(2024), max_degree=3)
    dt = time.perf_counter() - t0
    record(1, "operator identities on 200 random cochains and chains",
           not rep["failures"] and dt < 5, f"{len(rep['failures'])} failures in {dt:.2f}s")


def test_02_connes_vs_bicomplex():
    algs = {"m2": matrix_algebra(2), "cz2": group_algebra(cyclic_group(2)), "cz3": group_algebra(cyclic_group(3)),
            "t12": rational_torus(1, 2)}
    rows = {k: ([cohomology_dim("connes_cyclic", A, n) for n in range(4)],
                [cohomology_dim("cyclic_bicomplex", A, n) for n in range(4)]) for k, A in algs.items()}
    record(2, "Connes complex and (b,B) bicomplex agree in degrees 0-3",
           all(a == b for a, b in rows.values()), json.dumps({k: v[0] for k, v in rows.items()}))


def test_03_morita():
    m2 = [cohomology_dim("connes_cyclic", matrix_algebra(2), n) for n in range(4)]
    one = [cohomology_dim("connes_cyclic", truncated_polynomial([1]), n) for n in range(4)]
    record(3, "HC of M_2 matches HC of the ground field", m2 == one == [1, 0, 1, 0], f"{m2} {one}")


def test_04_hkr():
    reps = [check_hkr(truncated_polynomial(e), n) for e in ([2], [2, 2]) for n in range(3)]
    record(4, "HKR calibration mu o eps = n! and b o eps = 0",
           all(r["mu_eps_is_factorial"] and r["b_eps_zero"] for r in reps))


def test_05_groupoids():
    pairs = [wedderburn_blocks(groupoid_algebra(pairs_groupoid(n))) for n in (2, 3, 4)]
    acts = []
    for n in (2, 3):
        G = cyclic_group(n)
        acts.append(wedderburn_blocks(groupoid_algebra(action_groupoid(G, n, [[G.mul(g, x) for x in range(n)]
                                                                              for g in range(n)]))))
    record(5, "groupoid algebras realize matrix algebras",
           pairs == [[2], [3], [4]] and acts == [[2], [3]], f"{pairs} {acts}")


def test_06_rational_torus():
    ok = True
    for q in (2, 3):
        A = rational_torus(1, q)
        tr = trace_space(A)
        support = [i for i, v in enumerate(tr[0].values) if v != 0] if len(tr) == 1 else None
        ok &= len(tr) == 1 and support == [A.labels.index("1")] and wedderburn_blocks(A) == [q]
    record(6, "rational torus has one trace supported on 1 and is M_q", ok)


def test_07_chern_pairing():
    rng = random.Random(77)
    M2 = matrix_algebra(2)
    CZ3 = group_algebra(cyclic_group(3))
    algs = [M2, CZ3]
    cocycles = {id(A): cyclic_cocycle_basis(A, 0) + cyclic_cocycle_basis(A, 2) for A in algs}
    conj = stab = cob = 0
    for t in range(100):
        A = algs[t % 2]
        e = random_idempotent(A, 2, rng, conjugate=False)
        u = random_invertible(A, 2, rng)
        phi = rng.choice(cocycles[id(A)])
        v = pair_even(phi, e)
        conj += pair_even(phi, e.conjugated(u)) == v
        stab += pair_even(phi, e.stabilized()) == v
        psi = cyclic_projection(random_cochain(A, 1, rng))
        odd = pair_odd(Cochain(A, 1, cochain_b(A, random_cochain(A, 0, rng).data)), u)
        cob += pair_even(Cochain(A, 2, cochain_b(A, psi.data)), e) == 0 and odd == 0
    tau = trace_space(CZ3)[0]
    zero = Cochain(CZ3, 2, np.zeros((3, 3, 3), dtype=object))
    bB = 0
    for _ in range(20):
        e = random_idempotent(CZ3, 2, rng)
        bB += pair_bB([trace_cocycle(tau), zero], e) == trace_pairing(tau, e)
    record(7, "Chern pairing invariance and pair_bB reduction",
           (conj, stab, cob, bB) == (100, 100, 100, 20), f"{conj}/{stab}/{cob} of 100, {bB}/20")


def _multiplicity_rep(A, mult):
    """C^k acting on C^(sum mult) with e_i the projection onto the i-th block."""
    size = sum(mult)
    mats, off = [], 0
    for m in mult:
        P = np.zeros((size, size), dtype=object)
        for j in range(off, off + m):
            P[j, j] = 1
        mats.append(P)
        off += m
    return Representation(A, mats)


def _cyclic_shift(m):
    U = np.zeros((m, m), dtype=object)
    for j in range(m):
        U[(j + 1) % m, j] = 1
    return U


def test_08_fredholm():
    one = truncated_polynomial([1])
    C2, C3 = direct_sum(one, one), direct_sum(direct_sum(one, one), one)
    cases = [(toy_fredholm_module(), [1, 0], 1)]
    modules = [(C2, (1, 1), (2, 0), None), (C2, (2, 1), (0, 3), None), (C2, (3, 0), (1, 2), "shift"),
             (C3, (1, 1, 1), (3, 0, 0), None), (C3, (2, 0, 1), (0, 2, 1), "shift"), (C3, (1, 2, 0), (1, 0, 2), None),
             (C3, (0, 0, 2), (1, 1, 0), None), (C2, (2, 2), (1, 3), "shift"), (C3, (2, 1, 1), (1, 1, 2), None)]
    for A, plus, minus, u in modules:
        U = _cyclic_shift(sum(plus)) if u else None
        FM = fredholm_from_pair(A, _multiplicity_rep(A, plus), _multiplicity_rep(A, minus), U)
        for i in range(A.dim):
            # oracle: on a finite space the index of e F e is dim eH+ - dim eH-
            cases.append((FM, [int(j == i) for j in range(A.dim)], plus[i] - minus[i]))
    bad = []
    for FM, vec, expected in cases:
        e = KIdempotent(FM.algebra, [[vec]])
        idx = fredholm_index(FM, e)
        pairing = pair_even(fredholm_character(FM, 0), e)
        if not (idx == pairing == expected):
            bad.append((vec, idx, pairing, expected))
    record(8, "Fredholm index equals the character pairing on 10 modules",
           not bad and len(modules) + 1 == 10, f"{len(cases)} idempotents, {len(bad)} mismatches")


def _rand_poly(rng, names, max_deg=2):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, max_deg) for _ in names)
        terms[e] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return PolyElement(names, terms)


def test_09_moyal():
    rng = random.Random(9)
    pi = PoissonStruct.standard(1)
    assoc = sum(check_associativity(pi, *(_rand_poly(rng, pi.names) for _ in range(3)), 6) == "none"
                for _ in range(100))
    x, y = (PolyElement.variable(pi.names, i) for i in range(2))
    c = moyal_product(pi, x, y, 6) - moyal_product(pi, y, x, 6)
    anchor = c.coeff(1) == PolyElement.constant(pi.names, -I) and all(c.coeff(k).is_zero() for k in (0, 2, 3, 4, 5, 6))
    bracket = 0
    for _ in range(100):
        f, g = _rand_poly(rng, pi.names, 3), _rand_poly(rng, pi.names, 3)
        d = moyal_product(pi, f, g, 1) - moyal_product(pi, g, f, 1)
        bracket += d.coeff(0).is_zero() and d.coeff(1) == poisson_bracket(pi, f, g) * (-I)
    record(9, "Moyal associativity through h^6, commutator anchor, Poisson limit",
           assoc == 100 and anchor and bracket == 100, f"{assoc}/100, anchor {anchor}, {bracket}/100")


def _deformation_inputs(rng):
    for exps in ([2, 2], [3, 2], [2, 3]):
        A = truncated_polynomial(exps)
        D1, D2 = euler_derivations(A, exps)
        a, b = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        yield A, bivector_cochain(A, D1 * a, D2), bivector_cochain(A, D1, D2 * b)


def test_10_deformation():
    rng = random.Random(10)
    checked = ok = 0
    for A, *firsts in _deformation_inputs(rng):
        for B1 in firsts:
            B = [multiplication_cochain(A), B1]
            for n in range(2, 5):
                step = deformation_step(B, n)
                checked += 1
                ok += step.is_cocycle and (step.solution is None or step.residual_zero)
                if step.solution is None:
                    break
                B.append(step.solution)
    record(10, "deformation obstructions are cocycles, solutions exact", ok == checked, f"{ok}/{checked} steps")


def _rand_op(rng, window):
    coeffs = {}
    for _ in range(rng.randint(1, 3)):
        k, n = rng.randint(-2, 2), rng.randint(-2, 2)
        coeffs.setdefault(k, {})
        coeffs[k][n] = coeffs[k].get(n, 0) + rng.randint(-3, 3)
    return FormalPsiDO(window, coeffs)


def test_11_psido():
    rng = random.Random(11)
    W = (-8, 4)
    traces = tries = 0
    while traces < 100:
        tries += 1
        c = commutator(_rand_op(rng, W), _rand_op(rng, W), W)
        if not c.exact_at(-1):
            continue
        assert residue_trace(c) == 0, "trace of a commutator"
        traces += 1
    radul = 0
    for _ in range(50):
        a, b, c = (_rand_op(rng, W) for _ in range(3))
        total = (radul_cocycle(commutator(a, b, W), c, W) + radul_cocycle(commutator(b, c, W), a, W)
                 + radul_cocycle(commutator(c, a, W), b, W))
        radul += total == 0
    dim = trace_space_dimension((-4, 3))
    record(11, "residue trace, Radul cocycle, trace space", traces == 100 and radul == 50 and dim == 1,
           f"{traces} traces ({tries} drawn), {radul}/50 Radul, dim {dim}")


def test_12_hopf_cyclic():
    valid = []
    for g in ("Z2", "Z3"):
        H = build_hopf("group_algebra", g)
        for M in (cm_cocyclic_module(H, cutoff=3), dual_cyclic_module(H, cutoff=3)):
            r = validate_cyclic_module(M)
            valid.append(r.ok)
    H2 = build_hopf("group_algebra", "Z2")
    dual = hopf_cyclic_dims(dual_cyclic_module(H2, cutoff=5), range(5))
    cm0 = [hopf_cyclic_dims(cm_cocyclic_module(build_hopf("group_algebra", g), cutoff=2), [0])[0]
           for g in ("Z2", "Z3")]
    record(12, "Hopf cyclic modules, dual dims, CM HC^0",
           all(valid) and dual == [1, 0, 1, 0, 1] and cm0 == [1, 1], f"dual {dual}, HC^0 {cm0}")


def test_13_characteristic_map():
    act = translation_action(cyclic_group(3))
    haar = LinearFunctional(act.algebra, [Fraction(1, 3)] * 3)
    flags = [characteristic_map(act, haar, n).is_cocyclic_morphism for n in range(3)]
    record(13, "characteristic map of Z_3 translations is a cocyclic morphism", all(flags), str(flags))


def test_14_toeplitz():
    routes = {k: index_routes(LaurentSymbol.monomial(k)) for k in range(-5, 6)}
    ok = all(r == {"winding": -k, "kernels": -k, "commutator_trace": -k} for k, r in routes.items())
    ct = commutator_trace("z", "z^-1", 8)
    record(14, "Toeplitz index by three routes, Tr[T_z, T_z^-1] = -1", ok and ct == -1, f"ctrace {ct}")


def test_15_determinism():
    corpus = str(ROOT / "corpus")
    one = execute(["corpus", "run", "--dir", corpus, "--threads", "1", "--json"])
    four = execute(["corpus", "run", "--dir", corpus, "--threads", "4", "--json"])
    rep = json.loads(one[1]) if one[0] == 0 else {"passed": 0, "total": "?"}
    record(15, "corpus output is byte-identical across thread counts",
           one == four and one[0] == 0, f"{rep['passed']}/{rep['total']} cases")


if __name__ == "__main__":
    import sys
    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                fails += 1
    sys.exit(1 if fails else 0)
