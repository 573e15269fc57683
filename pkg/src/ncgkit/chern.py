"""Pairings between cyclic cocycles and K-theory classes.

Conventions used throughout (pinned by the executable checks in this module):

* The matrix extension of a cochain is phi_k(m_0, .., m_n) = phi(tr(m_0 (x) .. (x) m_n)) with
  tr(m_0 (x) .. (x) m_n) = sum m_0[i0, i1] (x) m_1[i1, i2] (x) .. (x) m_n[in, i0].
* Even Chern chain: Ch_0(e) = tr(e) and, for k >= 1,
  Ch_2k(e) = (-1)^k (2k)!/k! tr((e - 1/2) (x) e^(x)2k), a tensor of length 2k+1.
* Odd Chern chain: Ch_{2k+1}(u) = (-1)^k k! tr((u (x) u^-1)^(x)(k+1)).
* Both satisfy (b + B) Ch = 0 in the normalized complex with B = (1 - lambda) s N.
* Cochains carry B = N s (1 - lambda), which is minus the transpose of the chain B, so
  a (b + B)-cocycle (phi_0, phi_2, ..) pairs with (-1)^k Ch_2k:
  <phi, e> = phi_0(tr e) + sum_k (2k)!/k! phi_2k(tr((e - 1/2) (x) e^(x)2k)).
"""
from __future__ import annotations

import itertools
import warnings
from fractions import Fraction
from math import factorial

import numpy as np

from .algebra import (as_matrix, block_ranks, is_idempotent, mat_direct_sum, mat_equal, mat_identity,
                      mat_mul, mat_zero, trace_space, LinearFunctional)
from .cochains import (Chain, Cochain, OperatorKind, _is_lazy, apply_operator, cochain_b,
                       cochain_B, cochain_lambda, is_normalized, normalize_chain, pair)
from .cyclo import conj, simplify
from .errors import NCGError, PreconditionError, ValidationError
from .linalg import SparseMatrix, nullspace, rank


# -----------------------------------------------------------------------------
# matrices over finite or lazy algebras

def _lazy_mat_mul(alg, X, Y):
    k, m = X.shape[0], Y.shape[1]
    out = np.empty((k, m), dtype=object)
    for i in range(k):
        for j in range(m):
            acc: dict = {}
            for l in range(X.shape[1]):
                for key, v in alg.mul(X[i, l], Y[l, j]).items():
                    acc[key] = acc.get(key, 0) + v
            out[i, j] = {key: simplify(v) for key, v in acc.items() if v != 0}
    return out


def _lazy_identity(alg, k):
    out = np.empty((k, k), dtype=object)
    for i in range(k):
        for j in range(k):
            out[i, j] = dict(alg.unit()) if i == j else {}
    return out


def _lazy_matrix(m):
    m = np.array(m, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError("matrix over a lazy algebra must be square with dict entries")
    out = np.empty(m.shape, dtype=object)
    for idx in itertools.product(range(m.shape[0]), repeat=2):
        out[idx] = {k: simplify(v) for k, v in dict(m[idx]).items() if v != 0}
    return out


def _lazy_equal(X, Y):
    return X.shape == Y.shape and all(X[idx] == Y[idx] for idx in itertools.product(range(X.shape[0]), repeat=2))


class KIdempotent:
    """An idempotent e in M_k(A)."""

    def __init__(self, parent, matrix, check: bool = True):
        self.parent = parent
        if _is_lazy(parent):
            self.matrix = _lazy_matrix(matrix)
            if check and not _lazy_equal(_lazy_mat_mul(parent, self.matrix, self.matrix), self.matrix):
                raise ValidationError("matrix is not idempotent")
        else:
            self.matrix = as_matrix(parent, matrix)
            if check and not is_idempotent(parent, self.matrix):
                raise ValidationError("matrix is not idempotent")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def stabilized(self, extra: int = 1) -> "KIdempotent":
        """e + 0 in M_{k+extra}(A)."""
        if _is_lazy(self.parent):
            raise PreconditionError("stabilization is implemented for finite algebras")
        return KIdempotent(self.parent, mat_direct_sum(self.parent, self.matrix, mat_zero(self.parent, extra)),
                           check=False)

    def conjugated(self, u: "KInvertible") -> "KIdempotent":
        A = self.parent
        m = mat_mul(A, mat_mul(A, u.matrix, self.matrix), u.inverse)
        return KIdempotent(A, m)

    def __repr__(self):
        return f"KIdempotent(size={self.size})"


class KInvertible:
    """An invertible u in GL_k(A) together with its inverse."""

    def __init__(self, parent, matrix, inverse, check: bool = True):
        self.parent = parent
        if _is_lazy(parent):
            self.matrix, self.inverse = _lazy_matrix(matrix), _lazy_matrix(inverse)
            if check:
                one = _lazy_identity(parent, self.matrix.shape[0])
                if not (_lazy_equal(_lazy_mat_mul(parent, self.matrix, self.inverse), one)
                        and _lazy_equal(_lazy_mat_mul(parent, self.inverse, self.matrix), one)):
                    raise ValidationError("u u^-1 = u^-1 u = 1 fails")
        else:
            self.matrix, self.inverse = as_matrix(parent, matrix), as_matrix(parent, inverse)
            if check:
                one = mat_identity(parent, self.matrix.shape[0])
                if not (mat_equal(mat_mul(parent, self.matrix, self.inverse), one)
                        and mat_equal(mat_mul(parent, self.inverse, self.matrix), one)):
                    raise ValidationError("u u^-1 = u^-1 u = 1 fails")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"KInvertible(size={self.size})"


# -----------------------------------------------------------------------------
# matrix extension

def trace_chain(alg, mats) -> Chain:
    """tr(m_0 (x) .. (x) m_n) as a chain of degree n."""
    mats = list(mats)
    n = len(mats) - 1
    if _is_lazy(alg):
        k = mats[0].shape[0]
        terms: dict = {}
        for idx in itertools.product(range(k), repeat=n + 1):
            entries = [mats[j][idx[j], idx[(j + 1) % (n + 1)]] for j in range(n + 1)]
            if not all(entries):
                continue
            for combo in itertools.product(*[list(e.items()) for e in entries]):
                c = 1
                for _, v in combo:
                    c = c * v
                key = tuple(kk for kk, _ in combo)
                terms[key] = terms.get(key, 0) + c
        return Chain(alg, n, terms=terms)
    k = mats[0].shape[0]
    # acc[i0, i_j, a_0..a_{j-1}]
    acc = mats[0]
    for j in range(1, n + 1):
        acc = np.tensordot(acc, mats[j], axes=([1], [0]))
        # shape (i0, a_0..a_{j-1}, i_{j+1}, a_j) -> (i0, i_{j+1}, a_0..a_j)
        acc = np.moveaxis(acc, -2, 1)
    out = sum(acc[i, i] for i in range(k))
    return Chain(alg, n, np.asarray(out, dtype=object).reshape((alg.dim,) * (n + 1)))


def amplified(phi: Cochain, mats):
    """phi_k(m_0, .., m_n)."""
    return pair(phi, trace_chain(phi.algebra, mats))


def trace_pairing(tau, e: KIdempotent):
    """tau([e]) = sum_i tau(e_ii) for a trace tau."""
    A = e.parent
    if not isinstance(tau, LinearFunctional):
        tau = LinearFunctional(A, tau)
    if not tau.is_trace():
        raise PreconditionError("functional is not a trace")
    return simplify(sum((tau(e.matrix[i, i]) for i in range(e.size)), 0))


# -----------------------------------------------------------------------------
# cocycle checks

def _lazy_window(phi, mats):
    keys = set()
    for m in mats:
        for entry in np.asarray(m, dtype=object).flat:
            keys.update(entry.keys())
    keys.update(phi.algebra.unit().keys())
    return sorted(keys)


def _check_cyclic_cocycle(phi: Cochain, mats=None, normalized=False):
    if phi.mode != "scalar":
        raise PreconditionError("pairings need scalar cochains")
    n = phi.degree
    if phi.lazy:
        # verify on the finite window of basis keys the pairing can see
        window = _lazy_window(phi, mats)
        lam = apply_operator(OperatorKind.lam, phi)
        bphi = apply_operator(OperatorKind.b, phi)
        for keys in itertools.product(window, repeat=n + 1):
            if lam.value_at(keys) != phi.value_at(keys):
                raise PreconditionError("cochain is not cyclic")
            if normalized and any(k == next(iter(phi.algebra.unit())) for k in keys[1:]) and phi.value_at(keys) != 0:
                raise PreconditionError("cochain is not normalized")
        for keys in itertools.product(window, repeat=n + 2):
            if bphi.value_at(keys) != 0:
                raise PreconditionError("cochain is not a cocycle")
        return
    A = phi.algebra
    if np.any(cochain_lambda(A, phi.data) != phi.data):
        raise PreconditionError("cochain is not cyclic")
    if np.any(cochain_b(A, phi.data) != 0):
        raise PreconditionError("cochain is not a Hochschild cocycle")
    if normalized and not is_normalized(phi):
        raise PreconditionError("cochain is not normalized")


def pair_even(phi: Cochain, e: KIdempotent, verify: bool = True):
    """<[phi], [e]> = phi_k(e, .., e) for a cyclic cocycle of even degree."""
    if phi.degree % 2:
        raise PreconditionError("pair_even needs an even-degree cocycle")
    if phi.algebra is not e.parent:
        raise PreconditionError("cocycle and idempotent live over different algebras")
    if verify:
        _check_cyclic_cocycle(phi, [e.matrix])
    return amplified(phi, [e.matrix] * (phi.degree + 1))


def pair_odd(phi: Cochain, u: KInvertible, verify: bool = True):
    """<[phi], [u]> = phi_k(u, u^-1, .., u, u^-1) for a normalized cyclic cocycle of odd degree."""
    if phi.degree % 2 == 0:
        raise PreconditionError("pair_odd needs an odd-degree cocycle")
    if phi.algebra is not u.parent:
        raise PreconditionError("cocycle and invertible live over different algebras")
    if verify:
        _check_cyclic_cocycle(phi, [u.matrix, u.inverse], normalized=True)
    mats = [u.matrix, u.inverse] * ((phi.degree + 1) // 2)
    return amplified(phi, mats)


# -----------------------------------------------------------------------------
# Chern character chains

def even_chain_constant(k: int):
    return (-1) ** k * Fraction(factorial(2 * k), factorial(k))


def odd_chain_constant(k: int):
    return (-1) ** k * factorial(k)


def _half_shift(alg, e: KIdempotent):
    """e - 1/2 as a matrix."""
    if _is_lazy(alg):
        m = e.matrix.copy()
        for i in range(e.size):
            d = dict(m[i, i])
            for key, v in alg.unit().items():
                d[key] = simplify(d.get(key, 0) - Fraction(1, 2) * v)
            m[i, i] = {kk: v for kk, v in d.items() if v != 0}
        return m
    return e.matrix - Fraction(1, 2) * mat_identity(alg, e.size)


def _bB_defect(chains) -> list:
    """Normalized components of (b + B) applied to a chain tuple, below the top degree."""
    out = []
    for low, high in zip(chains, chains[1:]):
        r = apply_operator(OperatorKind.B, low) + apply_operator(OperatorKind.b, high)
        out.append(normalize_chain(r))
    return out


def chern_character_chain(x, target_degree: int, cutoff: int = 4) -> tuple:
    """Components of the normalized (b, B) chain Ch(x) up to ``target_degree``.

    For an idempotent the components have degrees 0, 2, .., for an invertible 1, 3, ...
    The cycle condition is checked exactly before returning.
    """
    if target_degree > cutoff:
        raise PreconditionError(f"target degree {target_degree} exceeds the cutoff {cutoff}")
    alg = x.parent
    comps = []
    if isinstance(x, KIdempotent):
        if target_degree < 0:
            raise PreconditionError("target degree must be >= 0")
        comps.append(trace_chain(alg, [x.matrix]))
        shifted = _half_shift(alg, x)
        for k in range(1, target_degree // 2 + 1):
            ch = trace_chain(alg, [shifted] + [x.matrix] * (2 * k))
            comps.append(ch.scaled(even_chain_constant(k)))
    elif isinstance(x, KInvertible):
        if target_degree < 1:
            raise PreconditionError("odd chains start in degree 1")
        for k in range((target_degree - 1) // 2 + 1):
            ch = trace_chain(alg, [x.matrix, x.inverse] * (k + 1))
            comps.append(ch.scaled(odd_chain_constant(k)))
    else:
        raise TypeError("expected a KIdempotent or KInvertible")
    defects = _bB_defect(comps)
    if comps[0].degree > 0:
        defects.append(normalize_chain(apply_operator(OperatorKind.b, comps[0])))
    if any(not r.is_zero() for r in defects):
        raise NCGError("internal error: Chern character is not a (b, B) cycle")
    return tuple(comps)


def check_bB_cocycle(cocycles) -> None:
    """Raise unless (phi_0, phi_2, ..) is a normalized (b + B)-cocycle:
    b phi_2k + B phi_2k+2 = 0 and b phi_top = 0."""
    cocycles = list(cocycles)
    if not cocycles:
        return
    A = cocycles[0].algebra
    for j, phi in enumerate(cocycles):
        if phi.degree != 2 * j or phi.mode != "scalar" or phi.algebra is not A:
            raise PreconditionError("expected scalar cochains of degrees 0, 2, 4, ..")
        if not is_normalized(phi):
            raise PreconditionError(f"component of degree {phi.degree} is not normalized")
    for j, phi in enumerate(cocycles):
        r = cochain_b(A, phi.data)
        if j + 1 < len(cocycles):
            r = r + cochain_B(A, cocycles[j + 1].data)
        if np.any(r != 0):
            raise PreconditionError(f"tuple fails the (b + B) cocycle equation in degree {2 * j + 1}")


def pair_bB(cocycles, e: KIdempotent, verify: bool = True):
    """Pairing of a normalized (b + B)-cocycle (phi_0, phi_2, ..) with [e].

    Equals sum_k (-1)^k <phi_2k, Ch_2k(e)>; the k = 0 term is phi_0(tr e).
    """
    cocycles = list(cocycles)
    if not cocycles:
        return 0
    if verify:
        check_bB_cocycle(cocycles)
    chains = chern_character_chain(e, 2 * (len(cocycles) - 1), cutoff=max(4, 2 * len(cocycles)))
    return simplify(sum((-1) ** k * pair(phi, ch) for k, (phi, ch) in enumerate(zip(cocycles, chains))))


# -----------------------------------------------------------------------------
# cocycle constructors

def cyclic_cocycle_basis(alg, n: int) -> list:
    """Basis of the cyclic n-cocycles (lambda phi = phi, b phi = 0)."""
    from .cyclic import _cochain_b, _cyclic_cochains, algebra_cyclic_module
    M = algebra_cyclic_module(alg, n + 1)
    Z = _cyclic_cochains(M, n)
    ker = nullspace(_cochain_b(M, n) @ Z)
    shape = (alg.dim,) * (n + 1)
    out = []
    for v in ker:
        col = Z.apply_sparse(v)
        data = np.zeros(alg.dim ** (n + 1), dtype=object)
        for i, c in col.items():
            data[i] = c
        out.append(Cochain(alg, n, data.reshape(shape)))
    return out


def trace_cocycle(tau) -> Cochain:
    return Cochain(tau.parent, 0, tau.values.copy())


def derivation_cocycle(tau, d1, d2) -> Cochain:
    """phi(a0, a1, a2) = tau(a0 (d1(a1) d2(a2) - d2(a1) d1(a2))) for commuting
    derivations d1, d2 given as d x d matrices that preserve the trace."""
    A = tau.parent
    dim = A.dim
    d1 = np.array(d1, dtype=object)
    d2 = np.array(d2, dtype=object)
    data = np.zeros((dim,) * 3, dtype=object)
    basis = [A.basis_vector(i) for i in range(dim)]
    for i, j, k in itertools.product(range(dim), repeat=3):
        x = A.mul(d1.dot(basis[j]), d2.dot(basis[k])) - A.mul(d2.dot(basis[j]), d1.dot(basis[k]))
        data[i, j, k] = tau(A.mul(basis[i], x))
    return Cochain(A, 2, data)


def inner_derivation(alg, x):
    """Matrix of ad(x): a -> x a - a x."""
    return alg.left_mult(x) - alg.right_mult(x)


def winding_cocycle():
    """phi(f, g) = sum_k k f_{-k} g_k on the Laurent algebra, a normalized cyclic 1-cocycle."""
    from .lazy import laurent_algebra
    L = laurent_algebra()
    return Cochain(L, 1, evaluator=lambda keys: keys[1] if keys[0] + keys[1] == 0 else 0)


# -----------------------------------------------------------------------------
# random K-theory data

def _unipotent(alg, k, rng, upper=True, span=1):
    m = mat_identity(alg, k)
    n = mat_zero(alg, k)
    for i in range(k):
        for j in range(k):
            if (i < j) if upper else (i > j):
                v = np.array([rng.randint(-span, span) for _ in range(alg.dim)], dtype=object)
                n[i, j] = v
    # (1 + n)^-1 = sum (-n)^j, n nilpotent
    inverse = mat_identity(alg, k)
    power = mat_identity(alg, k)
    for _ in range(k):
        power = mat_mul(alg, power, -n)
        inverse = inverse + power
    return m + n, inverse


def random_invertible(alg, k: int, rng, span: int = 1) -> KInvertible:
    u1, v1 = _unipotent(alg, k, rng, True, span)
    u2, v2 = _unipotent(alg, k, rng, False, span)
    return KInvertible(alg, mat_mul(alg, u1, u2), mat_mul(alg, v2, v1))


def idempotents_of(alg) -> list:
    """A supply of idempotents of A: 0, 1, central idempotents and idempotent basis vectors."""
    from .algebra import central_idempotents
    from .errors import SplittingError
    out = [np.zeros(alg.dim, dtype=object), alg.unit.copy()]
    try:
        out += [c for c in central_idempotents(alg)]
    except SplittingError:
        pass
    for i in range(alg.dim):
        v = alg.basis_vector(i)
        if np.all(alg.mul(v, v) == v):
            out.append(v)
    seen, uniq = set(), []
    for v in out:
        key = tuple(v)
        if key not in seen:
            seen.add(key)
            uniq.append(v)
    return uniq


def random_idempotent(alg, k: int, rng, conjugate: bool = True, span: int = 1) -> KIdempotent:
    pool = idempotents_of(alg)
    d = mat_zero(alg, k)
    for i in range(k):
        d[i, i] = pool[rng.randrange(len(pool))].copy()
    e = KIdempotent(alg, d)
    if conjugate:
        e = e.conjugated(random_invertible(alg, k, rng, span))
    return e


# -----------------------------------------------------------------------------
# finite-dimensional Fredholm modules

class OddCharacterWarning(UserWarning):
    pass


def _amplify_rep(rep_of, mat, k):
    """pi_k(m) as a (k*m) x (k*m) matrix for m in M_k(A)."""
    blocks = [[rep_of(mat[i, j]) for j in range(k)] for i in range(k)]
    return np.block(blocks) if k else np.zeros((0, 0), dtype=object)


class FredholmModule:
    """(H, F) with grading eps: H finite-dimensional, F^2 = 1, eps F = -F eps, pi even."""

    def __init__(self, algebra, grading, F, rep, check: bool = True):
        from .algebra import Representation
        self.algebra = algebra
        self.grading = [int(g) for g in grading]
        self.carrier_dim = len(self.grading)
        self.F = np.array(F, dtype=object)
        if isinstance(rep, Representation):
            self.rep = rep
        else:
            self.rep = Representation(algebra, rep)
        self.eps = np.diag(np.array(self.grading, dtype=object))
        if check:
            self.validate()

    def validate(self):
        m = self.carrier_dim
        if any(g not in (1, -1) for g in self.grading):
            raise ValidationError("grading must be diagonal with entries +-1")
        if self.F.shape != (m, m) or self.rep.carrier_dim != m:
            raise ValidationError("F and the representation must act on the carrier")
        eye = np.eye(m, dtype=object)
        if np.any(self.F.dot(self.F) != eye):
            raise ValidationError("F^2 = 1 fails")
        if np.any(self.eps.dot(self.F) != -self.F.dot(self.eps)):
            raise ValidationError("F is not odd")
        for p in self.rep.matrices:
            if np.any(self.eps.dot(p) != p.dot(self.eps)):
                raise ValidationError("representation is not even")
        if not self.rep.check_homomorphism():
            raise ValidationError("representation is not an algebra homomorphism")

    def of(self, x):
        return self.rep.of(x)

    def to_json(self) -> dict:
        from .cyclo import format_scalar
        fmt = lambda M: [[format_scalar(v) for v in row] for row in M]
        return {"grading": self.grading, "F": fmt(self.F), "rep": [fmt(p) for p in self.rep.matrices]}


def fredholm_character(FM: FredholmModule, n: int) -> Cochain:
    """phi_n(a_0, .., a_n) = Trace(eps a_0 [F, a_1] .. [F, a_n]); zero (flagged) for odd n."""
    A = FM.algebra
    d = A.dim
    if n < 0:
        raise PreconditionError("degree must be >= 0")
    data = np.zeros((d,) * (n + 1), dtype=object)
    if n % 2:
        warnings.warn("odd characters of an even Fredholm module vanish", OddCharacterWarning, stacklevel=2)
        return Cochain(A, n, data)
    P = FM.rep.matrices
    comm = [FM.F.dot(p) - p.dot(FM.F) for p in P]
    for idx in itertools.product(range(d), repeat=n + 1):
        M = FM.eps.dot(P[idx[0]])
        for j in idx[1:]:
            M = M.dot(comm[j])
        data[idx] = simplify(sum(M[i, i] for i in range(FM.carrier_dim)))
    phi = Cochain(A, n, data)
    if np.any(cochain_lambda(A, phi.data) != phi.data) or np.any(cochain_b(A, phi.data) != 0):
        raise NCGError("internal error: Fredholm character is not a cyclic cocycle")
    return phi


def _exact_rank(M) -> int:
    return rank(SparseMatrix.from_dense(np.asarray(M, dtype=object)))


def fredholm_index(FM: FredholmModule, e: KIdempotent) -> int:
    """Index of F_e^+ : e H^+ -> e H^-, as dim ker - dim coker of the compressed operator."""
    A = FM.algebra
    k = e.size
    m = FM.carrier_dim
    pe = _amplify_rep(FM.of, e.matrix, k)
    eps = np.kron(np.eye(k, dtype=object), FM.eps)
    F = np.kron(np.eye(k, dtype=object), FM.F)
    eye = np.eye(k * m, dtype=object)
    plus = (eye + eps) * Fraction(1, 2)
    minus = (eye - eps) * Fraction(1, 2)
    Pp, Pm = pe.dot(plus), pe.dot(minus)   # e commutes with the grading
    dom, cod = _exact_rank(Pp), _exact_rank(Pm)
    # P' = e F e restricted to e H^+, landing in e H^-
    Pprime = Pm.dot(F).dot(Pp)
    r = _exact_rank(Pprime)
    index = (dom - r) - (cod - r)
    pairing = pair_even(fredholm_character(FM, 0), e)
    if simplify(pairing) != index:
        raise NCGError(f"internal error: index {index} differs from the character pairing {pairing}")
    return index


def fredholm_from_pair(alg, rep_plus, rep_minus, unitary=None) -> FredholmModule:
    """H = H+ + H- with pi = pi+ + pi-, F = [[0, U*], [U, 0]] for a unitary U (default identity)."""
    from .algebra import Representation
    P1 = rep_plus.matrices if isinstance(rep_plus, Representation) else [np.array(p, dtype=object) for p in rep_plus]
    P2 = rep_minus.matrices if isinstance(rep_minus, Representation) else [np.array(p, dtype=object) for p in rep_minus]
    m = P1[0].shape[0]
    if P2[0].shape[0] != m:
        raise PreconditionError("the two halves must have equal dimension")
    U = np.eye(m, dtype=object) if unitary is None else np.array(unitary, dtype=object)
    Ustar = np.vectorize(conj, otypes=[object])(U.T)
    Z = np.zeros((m, m), dtype=object)
    F = np.block([[Z, Ustar], [U, Z]])
    mats = [np.block([[p, Z], [Z, q]]) for p, q in zip(P1, P2)]
    return FredholmModule(alg, [1] * m + [-1] * m, F, mats)


def toy_fredholm_module() -> FredholmModule:
    """A = C + C on C^2 with eps = diag(1, -1), F the flip and pi(a, b) = diag(a, b)."""
    from .algebra import direct_sum, truncated_polynomial
    one = truncated_polynomial([1])
    A = direct_sum(one, one)
    mats = [np.array([[1, 0], [0, 0]], dtype=object), np.array([[0, 0], [0, 1]], dtype=object)]
    F = np.array([[0, 1], [1, 0]], dtype=object)
    return FredholmModule(A, [1, -1], F, mats)


def regular_representation(alg):
    from .algebra import Representation
    return Representation(alg, [alg.left_mult(alg.basis_vector(i)) for i in range(alg.dim)])


def index_by_blocks(alg, e: KIdempotent) -> list:
    return block_ranks(alg, e.matrix)
