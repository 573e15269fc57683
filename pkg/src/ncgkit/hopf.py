"""Finite-dimensional Hopf algebras and Hopf cyclic theory.

Structure maps are stored as arrays over the basis of the underlying algebra:
``coproduct[i, j, k]`` is the coefficient of e_j (x) e_k in Delta(e_i),
``counit[i]`` is eps(e_i) and ``antipode[:, i]`` is S(e_i).  Sweedler legs are
read off these arrays directly.  Tensors of H are handled as dicts from index
tuples to coefficients and turned into sparse matrices at the end.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FinAlgebra, LinearFunctional, group_algebra
from .cochains import Cochain
from .cyclic import CyclicModulePresentation, algebra_cyclic_module, cohomology_dim
from .cyclo import inv, simplify
from .errors import PreconditionError, ValidationError
from .groups import FiniteGroup, group_from_name
from .linalg import SparseMatrix, nullspace

# -----------------------------------------------------------------------------
# tensor dicts


def _acc(out: dict, key, v):
    v = simplify(out.get(key, 0) + v)
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


def _flat(key, d):
    i = 0
    for k in key:
        i = i * d + k
    return i


def _keys(d, n):
    return itertools.product(range(d), repeat=n)


def _matrix(fn, d, n_in, n_out) -> SparseMatrix:
    """Matrix of a linear map H^(x)n_in -> H^(x)n_out given on basis tuples."""
    cols = []
    for key in _keys(d, n_in):
        img = fn(key)
        cols.append({_flat(k, d): v for k, v in img.items()})
    return SparseMatrix.from_columns(d ** n_out, cols)


class HopfAlgebra:
    def __init__(self, algebra: FinAlgebra, coproduct, counit, antipode, name: str = "", check: bool = True):
        d = algebra.dim
        self.algebra = algebra
        self.dim = d
        self.name = name
        self.coproduct = np.array(coproduct, dtype=object).reshape(d, d, d)
        self.counit = np.array(counit, dtype=object).reshape(d)
        self.antipode = np.array(antipode, dtype=object).reshape(d, d)
        self._delta_terms = [tuple(((int(j), int(k)), self.coproduct[i, j, k])
                                   for j, k in zip(*np.nonzero(self.coproduct[i] != 0)))
                             for i in range(d)]
        self._S_terms = [tuple((int(j), self.antipode[j, i]) for j in np.nonzero(self.antipode[:, i] != 0)[0])
                         for i in range(d)]
        if check:
            bad = self.axiom_failures()
            if bad:
                raise ValidationError("Hopf axioms fail: " + ", ".join(bad))

    # basic maps on basis tensors -------------------------------------------
    def mul_terms(self, i, j):
        return self.algebra.table[i][j]

    def unit_terms(self):
        return tuple((int(k), v) for k, v in enumerate(self.algebra.unit) if v != 0)

    def delta_terms(self, i):
        return self._delta_terms[i]

    def S_terms(self, i):
        return self._S_terms[i]

    def vec_to_terms(self, v):
        return tuple((int(k), c) for k, c in enumerate(v) if c != 0)

    def apply_vec(self, terms_fn, v):
        out = [0] * self.dim
        for i, c in enumerate(v):
            if c != 0:
                for k, x in terms_fn(i):
                    out[k] = out[k] + c * x
        return np.array([simplify(x) for x in out], dtype=object)

    def S_vec(self, v):
        return self.apply_vec(self.S_terms, v)

    def delta_vec(self, v) -> np.ndarray:
        return np.einsum("i,ijk->jk", np.array(v, dtype=object), self.coproduct)

    def is_grouplike(self, g) -> bool:
        g = np.array(g, dtype=object)
        dg = self.delta_vec(g)
        return bool(np.all(dg == np.multiply.outer(g, g))) and simplify(np.dot(self.counit, g)) == 1

    def is_character(self, delta) -> bool:
        delta = np.array(delta, dtype=object)
        A = self.algebra
        if simplify(np.dot(delta, A.unit)) != 1:
            return False
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = simplify(sum(c * delta[k] for k, c in A.table[i][j]))
                if lhs != simplify(delta[i] * delta[j]):
                    return False
        return True

    def inverse_of(self, g):
        """Inverse of a grouplike element: S(g)."""
        return self.S_vec(g)

    # axioms -----------------------------------------------------------------
    def axiom_failures(self) -> list:
        A, d = self.algebra, self.dim
        D, eps, S = self.coproduct, self.counit, self.antipode
        bad = []
        # Delta is a unital algebra map
        unit2 = np.multiply.outer(A.unit, A.unit)
        if np.any(self.delta_vec(A.unit) != unit2):
            bad.append("Delta(1) != 1 (x) 1")
        for i in range(d):
            for j in range(d):
                lhs = self.delta_vec(A.mul(A.basis_vector(i), A.basis_vector(j)))
                rhs = np.zeros((d, d), dtype=object)
                for (a, b), x in self._delta_terms[i]:
                    for (c, e), y in self._delta_terms[j]:
                        for p, u in A.table[a][c]:
                            for q, w in A.table[b][e]:
                                rhs[p, q] += x * y * u * w
                if np.any(lhs != rhs):
                    bad.append("Delta is not multiplicative")
                    break
            else:
                continue
            break
        if not self.is_character(eps):
            bad.append("counit is not a character")
        # coassociativity
        left = np.einsum("ijk,jab->iabk", D, D)
        right = np.einsum("ijk,kab->ijab", D, D)
        if np.any(left != right):
            bad.append("coassociativity")
        # counit law
        if np.any(np.einsum("j,ijk->ik", eps, D) != np.eye(d, dtype=object)) or \
                np.any(np.einsum("k,ijk->ij", eps, D) != np.eye(d, dtype=object)):
            bad.append("counit law")
        # antipode law: m(S (x) I)Delta = m(I (x) S)Delta = eta eps
        for i in range(d):
            l = np.zeros(d, dtype=object)
            r = np.zeros(d, dtype=object)
            for (a, b), x in self._delta_terms[i]:
                for sa, y in self._S_terms[a]:
                    for p, u in A.table[sa][b]:
                        l[p] += x * y * u
                for sb, y in self._S_terms[b]:
                    for p, u in A.table[a][sb]:
                        r[p] += x * y * u
            want = np.array([simplify(eps[i] * v) for v in A.unit], dtype=object)
            if np.any(np.vectorize(simplify, otypes=[object])(l) != want) or \
                    np.any(np.vectorize(simplify, otypes=[object])(r) != want):
                bad.append("antipode law")
                break
        return bad

    def is_cocommutative(self) -> bool:
        return bool(np.all(self.coproduct == self.coproduct.transpose(0, 2, 1)))

    def to_json(self) -> dict:
        from .io import hopf_to_json
        return hopf_to_json(self)

    def __repr__(self):
        return f"HopfAlgebra({self.name or 'dim ' + str(self.dim)})"


def function_algebra(group) -> FinAlgebra:
    """Functions on a finite group, basis the point indicators delta_g."""
    if isinstance(group, str):
        group = group_from_name(group)
    n = len(group)
    c = np.zeros((n, n, n), dtype=object)
    for g in range(n):
        c[g, g, g] = 1
    A = FinAlgebra(c, [1] * n, np.eye(n, dtype=object), [f"d({l})" for l in group.labels],
                   conductor=group.exponent())
    A._cache["group"] = group
    return A


def build_hopf(kind: str, group) -> HopfAlgebra:
    """Hopf structure on group_algebra(G) or function_algebra(G), axioms checked."""
    if isinstance(group, str):
        group = group_from_name(group)
    elif not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    n = len(group)
    D = np.zeros((n, n, n), dtype=object)
    S = np.zeros((n, n), dtype=object)
    if kind == "group_algebra":
        A = group_algebra(group)
        for g in range(n):
            D[g, g, g] = 1
            S[group.inv(g), g] = 1
        eps = [1] * n
    elif kind == "function_algebra":
        A = function_algebra(group)
        for a in range(n):
            for b in range(n):
                D[group.mul(a, b), a, b] = 1
        for g in range(n):
            S[group.inv(g), g] = 1
        eps = [int(g == group.identity) for g in range(n)]
    else:
        raise PreconditionError(f"unknown Hopf algebra kind {kind!r}")
    H = HopfAlgebra(A, D, eps, S, name=f"{kind}({len(group)})")
    H.group = group
    H.kind = kind
    return H


def group_characters(group: FiniteGroup) -> list:
    """All homomorphisms G -> C^*, as value lists, by backtracking over roots of unity."""
    from .cyclo import CycloScalar
    e = group.exponent()
    roots = [simplify(CycloScalar.root_of_unity(e, k)) for k in range(e)]
    n = len(group)
    out = []

    def extend(vals):
        g = len(vals)
        if g == n:
            out.append(list(vals))
            return
        for r in roots:
            if g == group.identity and r != 1:
                continue
            cand = vals + [r]
            ok = all(simplify(cand[a] * cand[b]) == cand[group.mul(a, b)]
                     for a in range(g + 1) for b in range(g + 1) if group.mul(a, b) <= g)
            if ok:
                extend(cand)

    extend([])
    return out


def characters(H: HopfAlgebra) -> list:
    """Characters of H built from a group (algebra maps H -> scalars)."""
    group, n = H.group, H.dim
    if H.kind == "group_algebra":
        return [np.array(v, dtype=object) for v in group_characters(group)]
    return [np.array([int(x == g) for x in range(n)], dtype=object) for g in range(n)]


def grouplikes(H: HopfAlgebra) -> list:
    group, n = H.group, H.dim
    if H.kind == "group_algebra":
        return [np.array([int(x == g) for x in range(n)], dtype=object) for g in range(n)]
    return [np.array(v, dtype=object) for v in group_characters(group)]


# -----------------------------------------------------------------------------
# modular pairs

def twisted_antipode(H: HopfAlgebra, delta):
    """S~_delta(h) = delta(h(1)) S(h(2)), as a d x d matrix acting on columns."""
    d = H.dim
    M = np.zeros((d, d), dtype=object)
    for i in range(d):
        for (a, b), x in H.delta_terms(i):
            if delta[a] != 0:
                for k, y in H.S_terms(b):
                    M[k, i] += x * delta[a] * y
    return np.vectorize(simplify, otypes=[object])(M)


def dual_antipode(H: HopfAlgebra, delta, sigma, literal: bool = False):
    """S^(h) = delta(h(2)) sigma S(h(1)), the degree-one cyclic operator of the dual module.

    With ``literal`` the factor is the leg h(2) itself rather than delta(h(2));
    that reading sends every grouplike g to 1, so its square is never the
    identity on a group algebra.
    """
    d, A = H.dim, H.algebra
    M = np.zeros((d, d), dtype=object)
    for i in range(d):
        for (a, b), x in H.delta_terms(i):
            sa = H.S_vec(A.basis_vector(a))
            if literal:
                v = A.mul(A.mul(A.basis_vector(b), sigma), sa)
            else:
                v = delta[b] * A.mul(sigma, sa)
            M[:, i] += x * v
    return np.vectorize(simplify, otypes=[object])(M)


def _matmul(X, Y):
    return np.vectorize(simplify, otypes=[object])(X.dot(Y))


@dataclass
class ModularPair:
    hopf: HopfAlgebra
    delta: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        self.delta = np.array([simplify(v) for v in self.delta], dtype=object)
        self.sigma = np.array([simplify(v) for v in self.sigma], dtype=object)
        if not self.hopf.is_character(self.delta):
            raise PreconditionError("delta is not a character")
        if not self.hopf.is_grouplike(self.sigma):
            raise PreconditionError("sigma is not grouplike")

    @property
    def sigma_inv(self):
        return self.hopf.inverse_of(self.sigma)


def counit_pair(H: HopfAlgebra) -> ModularPair:
    return ModularPair(H, H.counit, H.algebra.unit)


def modular_check(H: HopfAlgebra, delta, sigma) -> dict:
    pair = ModularPair(H, delta, sigma)
    A, d = H.algebra, H.dim
    is_pair = simplify(np.dot(pair.delta, pair.sigma)) == 1
    St = twisted_antipode(H, pair.delta)
    conj = np.zeros((d, d), dtype=object)
    for i in range(d):
        conj[:, i] = A.mul(A.mul(pair.sigma, A.basis_vector(i)), pair.sigma_inv)
    cm = bool(np.all(_matmul(St, St) == conj))
    Sh = dual_antipode(H, pair.delta, pair.sigma)
    dual = bool(np.all(_matmul(Sh, Sh) == np.eye(d, dtype=object)))
    return {"is_pair": bool(is_pair), "cm_involutive": is_pair and cm, "dual_involutive": is_pair and dual}


def transported_pair(H: HopfAlgebra, delta, sigma):
    """(delta o S, sigma^-1): the pair matching (delta, sigma) across the two theories."""
    delta = np.array(delta, dtype=object)
    dS = np.array([simplify(sum(delta[k] * c for k, c in H.S_terms(i))) for i in range(H.dim)], dtype=object)
    return dS, H.inverse_of(np.array(sigma, dtype=object))


# -----------------------------------------------------------------------------
# the Connes-Moscovici cocyclic module and the dual cyclic module

def _iterated_coproduct(H, vec_terms, legs):
    """Delta^(legs-1) applied to a sum of basis elements: dict tuple -> coeff."""
    cur = {(i,): c for i, c in vec_terms}
    for _ in range(legs - 1):
        nxt = {}
        for key, c in cur.items():
            for (a, b), x in H.delta_terms(key[-1]):
                _acc(nxt, key[:-1] + (a, b), c * x)
        cur = nxt
    return cur


def _legwise_product(H, left: dict, right_key) -> dict:
    """(x_1 (x) .. (x) x_n) . (y_1 (x) .. (x) y_n) with y a basis tuple."""
    out = {}
    for key, c in left.items():
        partial = {(): c}
        for a, b in zip(key, right_key):
            nxt = {}
            for pk, v in partial.items():
                for p, u in H.mul_terms(a, b):
                    _acc(nxt, pk + (p,), v * u)
            partial = nxt
        for k, v in partial.items():
            _acc(out, k, v)
    return out


def cm_cocyclic_module(H: HopfAlgebra, delta=None, sigma=None, cutoff: int = 3) -> CyclicModulePresentation:
    """Cochain-side maps of H^natural_(delta, sigma): C^0 = scalars, C^n = H^(x)n."""
    pair = ModularPair(H, H.counit if delta is None else delta, H.algebra.unit if sigma is None else sigma)
    chk = modular_check(H, pair.delta, pair.sigma)
    if not chk["cm_involutive"]:
        raise PreconditionError("(delta, sigma) is not a modular pair in involution")
    d = H.dim
    unit = H.unit_terms()
    sig = H.vec_to_terms(pair.sigma)
    St = twisted_antipode(H, pair.delta)
    St_terms = [tuple((int(k), St[k, i]) for k in range(d) if St[k, i] != 0) for i in range(d)]
    eps = H.counit

    dims = [d ** n for n in range(cutoff + 1)]
    faces = [[]]
    for n in range(1, cutoff + 1):
        maps = []
        m = n - 1  # source H^(x)m

        def coface(i, m=m):
            def fn(key):
                out = {}
                if i == 0:
                    for u, c in unit:
                        _acc(out, (u,) + key, c)
                elif i == m + 1:
                    for s, c in sig:
                        _acc(out, key + (s,), c)
                else:
                    for (a, b), c in H.delta_terms(key[i - 1]):
                        _acc(out, key[:i - 1] + (a, b) + key[i:], c)
                return out
            return fn

        for i in range(n + 1):
            maps.append(_matrix(coface(i), d, m, n))
        faces.append(maps)
    degens = []
    for n in range(cutoff):
        maps = []
        for i in range(n + 1):
            def fn(key, i=i):
                c = eps[key[i]]
                return {key[:i] + key[i + 1:]: c} if c != 0 else {}
            maps.append(_matrix(fn, d, n + 1, n))
        degens.append(maps)
    cyc = [SparseMatrix.identity(1)]
    for n in range(1, cutoff + 1):
        def fn(key, n=n):
            left = _iterated_coproduct(H, St_terms[key[0]], n)
            out = {}
            for s, c in sig:
                for k, v in _legwise_product(H, left, key[1:] + (s,)).items():
                    _acc(out, k, v * c)
            return out
        cyc.append(_matrix(fn, d, n, n))
    return CyclicModulePresentation(dims, faces, degens, cyc, "cocyclic", name=f"CM {H.name}")


def dual_cyclic_module(H: HopfAlgebra, delta=None, sigma=None, cutoff: int = 3) -> CyclicModulePresentation:
    """The cyclic module H~_natural^(delta, sigma) with X_0 = scalars, X_n = H^(x)n."""
    pair = ModularPair(H, H.counit if delta is None else delta, H.algebra.unit if sigma is None else sigma)
    chk = modular_check(H, pair.delta, pair.sigma)
    if not chk["dual_involutive"]:
        raise PreconditionError("(delta, sigma) does not satisfy S^2 = id")
    d, A = H.dim, H.algebra
    eps, dl = H.counit, pair.delta
    unit = H.unit_terms()
    dims = [d ** n for n in range(cutoff + 1)]
    faces = [[]]
    for n in range(1, cutoff + 1):
        maps = []
        for i in range(n + 1):
            def fn(key, i=i, n=n):
                if i == 0:
                    c = eps[key[0]]
                    return {key[1:]: c} if c != 0 else {}
                if i == n:
                    c = dl[key[-1]]
                    return {key[:-1]: c} if c != 0 else {}
                out = {}
                for p, c in H.mul_terms(key[i - 1], key[i]):
                    _acc(out, key[:i - 1] + (p,) + key[i + 1:], c)
                return out
            maps.append(_matrix(fn, d, n, n - 1))
        faces.append(maps)
    degens = []
    for n in range(cutoff):
        maps = []
        for i in range(n + 1):
            def fn(key, i=i):
                out = {}
                for u, c in unit:
                    _acc(out, key[:i] + (u,) + key[i:], c)
                return out
            maps.append(_matrix(fn, d, n, n + 1))
        degens.append(maps)
    sigma_v = pair.sigma
    cyc = [SparseMatrix.identity(1)]
    for n in range(1, cutoff + 1):
        def fn(key, n=n):
            # split every h_j into h_j(1) (x) h_j(2)
            out = {}
            for legs in itertools.product(*(H.delta_terms(k) for k in key)):
                c = 1
                for _, x in legs:
                    c = c * x
                firsts = [ab[0] for ab, _ in legs]
                seconds = [ab[1] for ab, _ in legs]
                c = c * dl[seconds[-1]]
                if c == 0:
                    continue
                prod = A.basis_vector(firsts[0])
                for f in firsts[1:]:
                    prod = A.mul(prod, A.basis_vector(f))
                head = A.mul(sigma_v, H.S_vec(prod))
                for k, v in enumerate(head):
                    if v != 0:
                        _acc(out, (k,) + tuple(seconds[:-1]), c * v)
            return out
        cyc.append(_matrix(fn, d, n, n))
    return CyclicModulePresentation(dims, faces, degens, cyc, "cyclic", name=f"dual {H.name}")


def hopf_cyclic_dims(M: CyclicModulePresentation, degrees) -> list:
    """HC dimensions of a (co)cyclic presentation through the cyclic bicomplex."""
    return [cohomology_dim("cyclic_bicomplex", M, n) for n in degrees]


# -----------------------------------------------------------------------------
# Haar integrals

def _haar_solutions(H: HopfAlgebra) -> list:
    """Nullspace of: for every basis h_i, sum_j lambda_j Delta[i, j, :] = lambda_i 1."""
    d, A = H.dim, H.algebra
    rows = []
    for i in range(d):
        for k in range(d):
            row = {j: H.coproduct[i, j, k] for j in range(d) if H.coproduct[i, j, k] != 0}
            if A.unit[k] != 0:
                row[i] = simplify(row.get(i, 0) - A.unit[k])
            row = {a: b for a, b in row.items() if b != 0}
            if row:
                rows.append(row)
    return nullspace(SparseMatrix(len(rows), d, rows))


def haar_solution_dim(H: HopfAlgebra) -> int:
    return len(_haar_solutions(H))


def haar_integral(H: HopfAlgebra):
    """The normalized left Haar integral, or None when the solution space is not a line."""
    ns = _haar_solutions(H)
    if len(ns) != 1:
        return None
    A = H.algebra
    v = [ns[0].get(j, 0) for j in range(H.dim)]
    norm = simplify(sum(x * u for x, u in zip(v, A.unit)))
    if norm == 0:
        return None
    return LinearFunctional(A, [simplify(x * inv(norm)) for x in v])


# -----------------------------------------------------------------------------
# actions and the characteristic map

class HopfAction:
    """H acting on a finite algebra A; ``matrices[i]`` is the operator of e_i on A."""

    def __init__(self, hopf: HopfAlgebra, algebra: FinAlgebra, matrices, check: bool = True):
        self.hopf = hopf
        self.algebra = algebra
        self.matrices = [np.array(m, dtype=object) for m in matrices]
        if len(self.matrices) != hopf.dim:
            raise PreconditionError("need one operator per basis element of H")
        if check:
            bad = self.failures()
            if bad:
                raise ValidationError("not a module algebra: " + ", ".join(bad))

    def act(self, i: int, a):
        return np.array([simplify(x) for x in self.matrices[i].dot(np.array(a, dtype=object))], dtype=object)

    def act_vec(self, h, a):
        out = np.zeros(self.algebra.dim, dtype=object)
        for i, c in enumerate(h):
            if c != 0:
                out = out + c * self.act(i, a)
        return np.array([simplify(x) for x in out], dtype=object)

    def failures(self) -> list:
        H, A = self.hopf, self.algebra
        bad = []
        ident = np.eye(A.dim, dtype=object)
        one = sum((c * self.matrices[k] for k, c in H.unit_terms()), np.zeros((A.dim, A.dim), dtype=object))
        if np.any(one != ident):
            bad.append("unit acts as identity")
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = sum((c * self.matrices[k] for k, c in H.mul_terms(i, j)),
                          np.zeros((A.dim, A.dim), dtype=object))
                if np.any(_matmul(self.matrices[i], self.matrices[j]) != np.vectorize(simplify, otypes=[object])(lhs)):
                    bad.append("module law")
                    break
        for i in range(H.dim):
            if np.any(self.act(i, A.unit) != H.counit[i] * A.unit):
                bad.append("h(1) = eps(h) 1")
                break
            for a in range(A.dim):
                for b in range(A.dim):
                    ea, eb = A.basis_vector(a), A.basis_vector(b)
                    lhs = self.act(i, A.mul(ea, eb))
                    rhs = np.zeros(A.dim, dtype=object)
                    for (p, q), c in H.delta_terms(i):
                        rhs = rhs + c * A.mul(self.act(p, ea), self.act(q, eb))
                    if np.any(lhs != np.vectorize(simplify, otypes=[object])(rhs)):
                        bad.append("h(ab) = h(1)(a) h(2)(b)")
                        return bad
        return bad


def translation_action(group) -> HopfAction:
    """C[G] acting on functions on G by (g f)(x) = f(x g)."""
    if isinstance(group, str):
        group = group_from_name(group)
    H = build_hopf("group_algebra", group)
    A = function_algebra(group)
    n = len(group)
    mats = []
    for g in range(n):
        M = np.zeros((n, n), dtype=object)
        # (g f)(x) = f(xg): the indicator of y goes to the indicator of y g^-1
        for y in range(n):
            M[group.mul(y, group.inv(g)), y] = 1
        mats.append(M)
    return HopfAction(H, A, mats)


def check_invariant_trace(action: HopfAction, tau: LinearFunctional, pair: ModularPair) -> list:
    H, A = action.hopf, action.algebra
    bad = []
    for i in range(H.dim):
        for a in range(A.dim):
            if tau(action.act(i, A.basis_vector(a))) != simplify(pair.delta[i] * tau.values[a]):
                bad.append("tau is not delta-invariant")
                break
        if bad:
            break
    sig = pair.sigma
    for a in range(A.dim):
        for b in range(A.dim):
            ea, eb = A.basis_vector(a), A.basis_vector(b)
            if tau(A.mul(ea, eb)) != tau(A.mul(eb, action.act_vec(sig, ea))):
                bad.append("tau is not a sigma-trace")
                return bad
    return bad


def characteristic_matrix(action: HopfAction, tau: LinearFunctional, n: int) -> SparseMatrix:
    """chi_tau: H^(x)n -> C^n(A), chi(h_1..h_n)(a0..an) = tau(a0 h_1(a1) .. h_n(an))."""
    H, A = action.hopf, action.algebra
    dA, dH = A.dim, H.dim
    cols = []
    act = [[action.act(i, A.basis_vector(a)) for a in range(dA)] for i in range(dH)]
    for hkey in _keys(dH, n):
        col = {}
        for akey in _keys(dA, n + 1):
            v = A.basis_vector(akey[0])
            for h, a in zip(hkey, akey[1:]):
                v = A.mul(v, act[h][a])
            val = simplify(tau(v))
            if val != 0:
                col[_flat(akey, dA)] = val
        cols.append(col)
    return SparseMatrix.from_columns(dA ** (n + 1), cols)


@dataclass
class CharacteristicMap:
    degree: int
    matrices: list
    is_cocyclic_morphism: bool
    failures: list

    def image(self, n: int, hkey, d: int):
        col = self.matrices[n].T.rows[_flat(hkey, d)] if n < len(self.matrices) else {}
        return col

    def to_json(self):
        return {"degree": self.degree, "is_cocyclic_morphism": self.is_cocyclic_morphism,
                "failures": self.failures}


def characteristic_map(action: HopfAction, tau: LinearFunctional, n: int, delta=None, sigma=None) -> CharacteristicMap:
    """Images of H^(x)k for k <= n and a check that they intertwine all structure maps."""
    H, A = action.hopf, action.algebra
    pair = ModularPair(H, H.counit if delta is None else delta, H.algebra.unit if sigma is None else sigma)
    bad = check_invariant_trace(action, tau, pair)
    if bad:
        raise PreconditionError(", ".join(bad))
    top = n + 1
    CM = cm_cocyclic_module(H, pair.delta, pair.sigma, cutoff=top)
    Anat = algebra_cyclic_module(A, top)
    chi = [characteristic_matrix(action, tau, k) for k in range(top + 1)]
    fails = []
    for k in range(n + 1):
        # cofaces into degree k
        if k >= 1:
            for i in range(k + 1):
                if not chi[k] @ CM.faces[k][i] == Anat.d(k, i).T @ chi[k - 1]:
                    fails.append(f"coface {i} in degree {k}")
        for i in range(k + 1):
            if not chi[k] @ CM.degeneracies[k][i] == Anat.s(k, i).T @ chi[k + 1]:
                fails.append(f"codegeneracy {i} in degree {k}")
        if not chi[k] @ CM.cyclic[k] == Anat.t(k).T @ chi[k]:
            fails.append(f"cyclic operator in degree {k}")
    return CharacteristicMap(n, chi[:n + 1], not fails, fails)


def characteristic_cochain(action: HopfAction, tau: LinearFunctional, hkey) -> Cochain:
    """chi_tau(h_1 (x) .. (x) h_n) as a scalar cochain on A."""
    n = len(hkey)
    A = action.algebra
    M = characteristic_matrix(action, tau, n)
    col = M.T.rows[_flat(tuple(hkey), action.hopf.dim)]
    data = np.zeros(A.dim ** (n + 1), dtype=object)
    for j, v in col.items():
        data[j] = v
    return Cochain(A, n, data.reshape((A.dim,) * (n + 1)))


# -----------------------------------------------------------------------------
# group cocycles to cyclic cocycles

def _is_z(Gamma) -> bool:
    return isinstance(Gamma, str) and Gamma.strip().upper() in ("Z", "INTEGERS")


def group_cocycle_to_cyclic(Gamma, phi, n: int, window: int = 5) -> Cochain:
    """phi^(g0, .., gn) = phi(g1, .., gn) if g0 g1 .. gn = e, else 0.

    ``Gamma`` is a finite group (or its name) or "Z"; for Z the cochain is
    evaluated lazily on the Laurent algebra and normalization is checked on
    elements of absolute value at most ``window``.
    """
    if _is_z(Gamma):
        from .lazy import laurent_algebra
        L = laurent_algebra()
        rng = range(-window, window + 1)
        for keys in itertools.product(rng, repeat=n):
            if 0 in keys and phi(*keys) != 0:
                raise PreconditionError("group cochain is not normalized")
        return Cochain(L, n, evaluator=lambda keys: phi(*keys[1:]) if sum(keys) == 0 else 0)
    if isinstance(Gamma, str):
        Gamma = group_from_name(Gamma)
    elif not isinstance(Gamma, FiniteGroup):
        Gamma = FiniteGroup(Gamma)
    e = Gamma.identity
    for keys in _keys(len(Gamma), n):
        if e in keys and simplify(phi(*keys)) != 0:
            raise PreconditionError("group cochain is not normalized")
    A = group_algebra(Gamma)
    m = len(Gamma)
    data = np.zeros((m,) * (n + 1), dtype=object)
    for keys in _keys(m, n + 1):
        prod = e
        for g in keys:
            prod = Gamma.mul(prod, g)
        if prod == e:
            data[keys] = simplify(phi(*keys[1:]))
    return Cochain(A, n, data)
